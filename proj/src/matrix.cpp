#include "mwu/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mwu/errors.hpp"

namespace mwu {
namespace {

auto find_slot(std::vector<Entry>& list, std::size_t idx) {
    return std::lower_bound(list.begin(), list.end(), idx,
                            [](const Entry& e, std::size_t k) { return e.index < k; });
}

void put(std::vector<Entry>& list, std::size_t idx, double v) {
    auto it = find_slot(list, idx);
    bool present = it != list.end() && it->index == idx;
    if (v == 0.0) {
        if (present) list.erase(it);
    } else if (present) {
        it->value = v;
    } else {
        list.insert(it, Entry{idx, v});
    }
}

}  // namespace

SparseNonnegMatrix::SparseNonnegMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {}

SparseNonnegMatrix SparseNonnegMatrix::from_dense(const std::vector<std::vector<double>>& dense) {
    std::size_t m = dense.size();
    std::size_t n = m ? dense.front().size() : 0;
    SparseNonnegMatrix out(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        if (dense[i].size() != n) throw Error(ErrorKind::ParseError, "ragged dense matrix");
        for (std::size_t j = 0; j < n; ++j)
            if (dense[i][j] != 0.0) out.set(i, j, dense[i][j]);
    }
    return out;
}

double SparseNonnegMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows() || j >= cols()) throw Error(ErrorKind::IndexOutOfRange, "matrix index");
    const auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const Entry& e, std::size_t k) { return e.index < k; });
    return (it != r.end() && it->index == j) ? it->value : 0.0;
}

void SparseNonnegMatrix::set(std::size_t i, std::size_t j, double v) {
    if (i >= rows() || j >= cols()) throw Error(ErrorKind::IndexOutOfRange, "matrix index");
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorKind::NegativeEntry, "entry must be finite and >= 0");
    double old = at(i, j);
    put(rows_[i], j, v);
    put(cols_[j], i, v);
    if (old == 0.0 && v != 0.0) ++nnz_;
    if (old != 0.0 && v == 0.0) --nnz_;
}

double SparseNonnegMatrix::max_value() const {
    double best = 0.0;
    for (const auto& r : rows_)
        for (const auto& e : r) best = std::max(best, e.value);
    return best;
}

double SparseNonnegMatrix::min_nonzero() const {
    double best = 0.0;
    for (const auto& r : rows_)
        for (const auto& e : r)
            if (best == 0.0 || e.value < best) best = e.value;
    return best;
}

std::size_t SparseNonnegMatrix::add_row() {
    rows_.emplace_back();
    return rows_.size() - 1;
}

std::vector<std::vector<double>> SparseNonnegMatrix::to_dense() const {
    std::vector<std::vector<double>> out(rows(), std::vector<double>(cols(), 0.0));
    for (std::size_t i = 0; i < rows(); ++i)
        for (const auto& e : rows_[i]) out[i][e.index] = e.value;
    return out;
}

bool operator==(const SparseNonnegMatrix& a, const SparseNonnegMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.nnz() != b.nnz()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ra = a.row(i), rb = b.row(i);
        if (ra.size() != rb.size()) return false;
        for (std::size_t k = 0; k < ra.size(); ++k)
            if (ra[k].index != rb[k].index || ra[k].value != rb[k].value) return false;
    }
    return true;
}

}  // namespace mwu
