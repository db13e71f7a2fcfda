#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mwu {

struct Entry {
    std::size_t index;
    double value;
};

// Nonnegative sparse matrix kept in both row-major and column-major form.
// Zero values are never stored; setting an entry to 0 removes it.
class SparseNonnegMatrix {
public:
    SparseNonnegMatrix() = default;
    SparseNonnegMatrix(std::size_t rows, std::size_t cols);

    static SparseNonnegMatrix from_dense(const std::vector<std::vector<double>>& dense);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_.size(); }
    std::size_t nnz() const { return nnz_; }

    double at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, double v);

    std::span<const Entry> row(std::size_t i) const { return rows_[i]; }
    std::span<const Entry> col(std::size_t j) const { return cols_[j]; }

    double max_value() const;
    double min_nonzero() const;  // 0 when empty

    // Appends an empty row and returns its index.
    std::size_t add_row();

    std::vector<std::vector<double>> to_dense() const;

    friend bool operator==(const SparseNonnegMatrix& a, const SparseNonnegMatrix& b);

private:
    std::vector<std::vector<Entry>> rows_;
    std::vector<std::vector<Entry>> cols_;
    std::size_t nnz_ = 0;
};

}  // namespace mwu
