#pragma once

#include <cmath>
#include <vector>

#include "mwu/exact.hpp"
#include "mwu/generate.hpp"
#include "mwu/matrix.hpp"

namespace mwu::testing {

inline std::vector<double> ones(std::size_t n) { return std::vector<double>(n, 1.0); }

inline std::vector<double> dense_row_products(const SparseNonnegMatrix& M, const std::vector<double>& x) {
    const auto D = M.to_dense();
    std::vector<double> out(D.size(), 0.0);
    for (std::size_t i = 0; i < D.size(); ++i)
        for (std::size_t j = 0; j < D[i].size(); ++j) out[i] += D[i][j] * x[j];
    return out;
}

inline std::vector<double> dense_col_products(const SparseNonnegMatrix& M, const std::vector<double>& y) {
    const auto D = M.to_dense();
    std::vector<double> out(M.cols(), 0.0);
    for (std::size_t i = 0; i < D.size(); ++i)
        for (std::size_t j = 0; j < D[i].size(); ++j) out[j] += D[i][j] * y[i];
    return out;
}

inline double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double d : v) s += d;
    return s;
}

// Exact OPT of min 1^T x s.t. Cx >= 1; infinity when infeasible.
inline double covering_opt(const SparseNonnegMatrix& C) {
    auto r = exact::solve_covering_exact(C, ones(C.cols()), ones(C.rows()));
    return r.status == exact::LpStatus::Optimal ? r.value_d() : INFINITY;
}

}  // namespace mwu::testing
