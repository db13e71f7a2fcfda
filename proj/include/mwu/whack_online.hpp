#pragma once

#include <cstdint>
#include <vector>

#include "mwu/whack.hpp"

namespace mwu {

enum class OnlineStatus { Maintained, Terminated };

// Rows arrive one at a time; m is never known. Keeps x~ = x-hat / W and
// pays a recourse of n every time a new phase lowers all coordinates.
class OnlineWhackSolver {
public:
    OnlineWhackSolver(std::size_t n, double lambda, double eps);

    OnlineStatus insert_row(std::span<const Entry> row);

    bool terminated() const { return terminated_; }
    std::int64_t recourse_total() const { return recourse_; }
    std::int64_t phase_transitions() const { return eng_.stats().phases - 1; }
    std::vector<double> current_x() const { return eng_.anchored(); }
    Outcome current() const;
    const SparseNonnegMatrix& rows_seen() const { return seen_; }
    const WhackEngine& engine() const { return eng_; }

private:
    void new_phase_rescan();

    std::size_t n_;
    WhackEngine eng_;
    SparseNonnegMatrix seen_;
    std::int64_t recourse_ = 0;
    bool terminated_ = false;
};

}  // namespace mwu
