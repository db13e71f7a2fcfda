#pragma once

#include <span>
#include <vector>

#include "mwu/matrix.hpp"

// Matrix-vector kernels. The serial versions are the reference; the
// OpenMP versions must agree with them to the last bit (each output
// coordinate is summed in the same order by exactly one thread).
namespace mwu::kernels {

std::vector<double> row_products_serial(const SparseNonnegMatrix& C, std::span<const double> x);
std::vector<double> row_products_parallel(const SparseNonnegMatrix& C, std::span<const double> x);

std::vector<double> col_products_serial(const SparseNonnegMatrix& C, std::span<const double> y);
std::vector<double> col_products_parallel(const SparseNonnegMatrix& C, std::span<const double> y);

// Dispatches to the parallel kernel above a size threshold.
std::vector<double> row_products(const SparseNonnegMatrix& C, std::span<const double> x);
std::vector<double> col_products(const SparseNonnegMatrix& C, std::span<const double> y);

}  // namespace mwu::kernels
