#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "mwu/matrix.hpp"

// Ground truth for small instances. Doubles are converted to rationals
// exactly, so every answer here is exact for the given binary inputs.
namespace mwu::exact {

using Rational = mpq_class;

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct ExactLPResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    std::vector<Rational> x;  // primal point
    std::vector<Rational> y;  // matching dual point

    double value_d() const { return value.get_d(); }
    std::vector<double> x_d() const;
    std::vector<double> y_d() const;
};

// Largest dimension accepted by the exact routines.
inline constexpr std::size_t kMaxDim = 12;

// max c^T y s.t. A y <= b, y >= 0, with b >= 0 (the slack basis starts
// feasible). Bland's rule, so it terminates. `y` of the result holds the
// dual multipliers of the rows.
ExactLPResult simplex_max(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                          const std::vector<Rational>& c);

// min a^T x s.t. Cx >= b, x >= 0 (a, b >= 0). Solved through the packing
// dual; x is recovered from the final tableau. Throws TooLarge.
ExactLPResult solve_covering_exact(const SparseNonnegMatrix& C, std::span<const double> a, std::span<const double> b);
// max b^T y s.t. C^T y <= a, y >= 0. Result x holds y; result y holds the covering point.
ExactLPResult solve_packing_exact(const SparseNonnegMatrix& C, std::span<const double> a, std::span<const double> b);

// Same covering optimum by enumerating every vertex of {x >= 0 : Cx >= b}.
ExactLPResult covering_by_vertices(const SparseNonnegMatrix& C, std::span<const double> a, std::span<const double> b);

struct Feasibility {
    bool feasible = false;
    std::vector<Rational> x;
};

// Is there x >= 0 with Px <= (1 + slack) 1 and Cx >= 1?
Feasibility positive_feasible_exact(const SparseNonnegMatrix& P, const SparseNonnegMatrix& C, const Rational& slack);
Feasibility positive_feasible_exact(const SparseNonnegMatrix& P, const SparseNonnegMatrix& C, double slack);
// Same question answered by vertex enumeration.
Feasibility positive_feasible_by_vertices(const SparseNonnegMatrix& P, const SparseNonnegMatrix& C, const Rational& slack);

// Smallest d in [1, remaining] with sum_j C_ij (1 + eps C_ij/lambda)^d xh_j / W >= 1
// by trying d = 1, 2, ...; `remaining` when none qualifies.
std::int64_t brute_force_step_size(std::span<const Entry> row, std::span<const double> xh, double W, double eps,
                                   double lambda, std::int64_t remaining);

// eps / (eta * kappa), kappa the largest packing entry or active covering entry.
double brute_force_delta(std::span<const double> packing_col, std::span<const double> active_covering_col,
                         double eps, double eta);

Rational to_rational(double v);

}  // namespace mwu::exact
