#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mwu/instance.hpp"

// Seeded random instances and monotone update streams. Draws are derived
// directly from mt19937_64 output, so equal seeds give equal files on every
// standard library.
namespace mwu::gen {

class Rng {
public:
    explicit Rng(std::uint64_t seed);
    double uniform();                                   // [0, 1)
    double uniform(double lo, double hi);               // [lo, hi)
    std::size_t index(std::size_t n);                   // [0, n)
    bool bernoulli(double p);
    double log_uniform(double lo, double hi);           // exp of uniform in [ln lo, ln hi)

private:
    std::mt19937_64 eng_;
};

// Each entry present with probability `density`, values uniform in (0, lambda].
// Every row gets at least one entry, so the instance is feasible.
CoveringInstance random_covering(Rng& rng, std::size_t m, std::size_t n, double lambda, double density, double eps);
PackingInstance random_packing(Rng& rng, std::size_t m, std::size_t n, double lambda, double density, double eps);

// Entries log-uniform in [L, U]; every covering row nonempty.
PositiveInstance random_positive(Rng& rng, std::size_t mp, std::size_t mc, std::size_t n, double L, double U,
                                 double density, double eps);

// Entries of C, a and b in [L, U]; every row of C nonempty and a > 0.
GeneralInstance random_general(Rng& rng, std::size_t m, std::size_t n, double L, double U, double density);

// Entries shrink toward zero by random factors; each row keeps one entry.
std::vector<UpdateEvent> restricting_stream(Rng& rng, const SparseNonnegMatrix& C, std::size_t count);
// Repeatedly halves the entry of the currently best-covered row, keeping one
// entry alive per row.
std::vector<UpdateEvent> halving_stream(Rng& rng, const SparseNonnegMatrix& C, std::size_t count);
// Packing entries shrink, covering entries grow; with translations the
// packing right-hand sides grow and covering right-hand sides shrink.
std::vector<UpdateEvent> relaxing_stream(Rng& rng, const PositiveInstance& inst, std::size_t count,
                                         bool translations);
// Entry decreases, objective increases and right-hand side increases.
std::vector<UpdateEvent> general_restricting_stream(Rng& rng, const GeneralInstance& inst, std::size_t count);

}  // namespace mwu::gen
