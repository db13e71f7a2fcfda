#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mwu/whack.hpp"

namespace mwu {

// Multiplies xh along the row by (1 - eps P_ij/lambda)^delta.
void whack_packing(std::span<const Entry> row, std::vector<double>& xh, double eps, double lambda,
                   std::int64_t delta = 1);

// Smallest k in [1, remaining] with sum_j P_ij (1 - eps P_ij/lambda)^k xh_j / W <= 1,
// or `remaining` when even that stays above.
std::int64_t packing_step_size(std::span<const Entry> row, std::span<const double> xh, double W,
                               double eps, double lambda, std::int64_t remaining);

// PackingPrimal x (1^T x = 1, Px <= 1+eps) or CoveringDual y (1^T y = 1, P^T y >= 1-4eps).
WhackRun solve_packing_basic(const PackingInstance& inst);
WhackRun solve_packing_fast(const PackingInstance& inst, const FastOptions& opt = {});

}  // namespace mwu
