#include "mwu/kernels.hpp"

#include <omp.h>

namespace mwu::kernels {
namespace {

constexpr std::size_t kParallelThreshold = 1u << 15;  // nonzeros

double dot(std::span<const Entry> line, std::span<const double> v) {
    double s = 0.0;
    for (const auto& e : line) s += e.value * v[e.index];
    return s;
}

}  // namespace

std::vector<double> row_products_serial(const SparseNonnegMatrix& C, std::span<const double> x) {
    std::vector<double> out(C.rows());
    for (std::size_t i = 0; i < C.rows(); ++i) out[i] = dot(C.row(i), x);
    return out;
}

std::vector<double> row_products_parallel(const SparseNonnegMatrix& C, std::span<const double> x) {
    std::vector<double> out(C.rows());
    const long m = static_cast<long>(C.rows());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < m; ++i) out[i] = dot(C.row(i), x);
    return out;
}

std::vector<double> col_products_serial(const SparseNonnegMatrix& C, std::span<const double> y) {
    std::vector<double> out(C.cols());
    for (std::size_t j = 0; j < C.cols(); ++j) out[j] = dot(C.col(j), y);
    return out;
}

std::vector<double> col_products_parallel(const SparseNonnegMatrix& C, std::span<const double> y) {
    std::vector<double> out(C.cols());
    const long n = static_cast<long>(C.cols());
#pragma omp parallel for schedule(static)
    for (long j = 0; j < n; ++j) out[j] = dot(C.col(j), y);
    return out;
}

std::vector<double> row_products(const SparseNonnegMatrix& C, std::span<const double> x) {
    return C.nnz() >= kParallelThreshold ? row_products_parallel(C, x) : row_products_serial(C, x);
}

std::vector<double> col_products(const SparseNonnegMatrix& C, std::span<const double> y) {
    return C.nnz() >= kParallelThreshold ? col_products_parallel(C, y) : col_products_serial(C, y);
}

}  // namespace mwu::kernels
