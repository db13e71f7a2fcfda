#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "mwu/whack.hpp"
#include "mwu/whack_dynamic.hpp"
#include "mwu/whack_online.hpp"
#include "mwu/whack_stream.hpp"

namespace mwu {

// C'_ij = C_ij / (a_j b_i).
SparseNonnegMatrix normalize(const GeneralInstance& inst);

// Geometric guesses L^2/U * (1+eps)^k, k = 0..K, with the last one >= n U^2 / L.
std::vector<double> guess_grid(std::size_t n, double L, double U, double eps);

// Problem for one guess mu: matrix mu * C', width mu * U / L^2.
CoveringInstance guess_instance(const SparseNonnegMatrix& normalized, double mu, double L, double U, double eps);

struct GeneralSolution {
    std::vector<double> x;        // covering solution, Cx >= (1-eps) b
    std::vector<double> y;        // packing solution, C^T y <= a (empty if none)
    double objective = std::numeric_limits<double>::infinity();  // a^T x
    double dual_objective = 0.0;  // b^T y
    double mu = 0.0;              // winning guess
    std::int64_t solves = 0;      // per-guess solver runs
};

// Smallest grid guess whose solve returns a primal, found by bracketing.
GeneralSolution solve_general_static(const GeneralInstance& inst, double eps);

// One dynamic solver per guess under restricting updates: C entries
// decreasing, b_i increasing (TranslateCovering) or a_j increasing
// (TranslateObjective). Translations smaller than a (1+eps) factor since the
// last applied value are absorbed.
class GeneralDynamicSolver {
public:
    GeneralDynamicSolver(GeneralInstance inst, double eps);

    void handle_update(const UpdateEvent& ev);
    GeneralSolution current() const;

    const GeneralInstance& instance() const { return inst_; }
    std::size_t guess_count() const { return guesses_.size(); }
    std::int64_t filtered_translations() const { return filtered_; }
    std::int64_t expanded_entry_updates() const { return expanded_; }

private:
    void push_entry(std::size_t i, std::size_t j);

    GeneralInstance inst_;
    double eps_;
    std::vector<double> applied_a_, applied_b_;
    std::vector<double> guesses_;
    std::vector<std::unique_ptr<DynamicWhackSolver>> solvers_;
    std::int64_t filtered_ = 0;
    std::int64_t expanded_ = 0;
};

struct GeneralStreamRun {
    GeneralSolution solution;
    std::int64_t passes_interleaved = 0;  // one physical scan serves every guess
    std::int64_t passes_sequential = 0;   // sum of per-guess passes
    std::int64_t max_guess_passes = 0;
};

GeneralStreamRun solve_general_stream(const GeneralInstance& inst, double eps, StreamMode mode);

// Rows (with their b_i) arrive online; a, L, U and n are known upfront.
class GeneralOnlineSolver {
public:
    GeneralOnlineSolver(std::vector<double> a, double L, double U, double eps);

    void insert_row(std::span<const Entry> row, double b_i);
    GeneralSolution current() const;
    std::int64_t recourse_total() const;
    std::int64_t phase_bound_total() const;  // |guesses| * n * phase bound
    std::size_t guess_count() const { return guesses_.size(); }

private:
    std::vector<double> a_;
    double L_, U_, eps_;
    std::vector<double> guesses_;
    std::vector<std::unique_ptr<OnlineWhackSolver>> solvers_;
    std::vector<double> b_seen_;
};

}  // namespace mwu
