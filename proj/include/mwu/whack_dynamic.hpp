#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mwu/whack.hpp"

namespace mwu {

struct DynamicStats {
    std::int64_t updates = 0;
    std::int64_t exact_rechecks = 0;   // est value fell in the ambiguous band
    std::int64_t estimate_refreshes = 0;
    std::int64_t column_touches = 0;
    std::int64_t rebuilds = 0;
};

// Maintains a covering certificate x~ = x-hat / W (or a frozen dual) while
// entries of C only decrease.
class DynamicWhackSolver {
public:
    explicit DynamicWhackSolver(CoveringInstance inst);

    const Outcome& current() const { return current_; }
    bool terminal() const { return terminal_; }
    Outcome handle_update(const UpdateEvent& ev);

    const CoveringInstance& instance() const { return inst_; }
    const WhackEngine& engine() const { return eng_; }
    const DynamicStats& stats() const { return stats_; }
    std::span<const std::int64_t> enforce_log() const { return enforce_log_; }

    // Audit helpers.
    double estimate(std::size_t j) const;         // z-hat_j in stored units
    std::int64_t estimate_exponent(std::size_t j) const { return zexp_[j]; }
    std::span<const double> est_dots() const { return est_dots_; }
    bool estimates_sandwiched(double rel_tol = 1e-9) const;
    double est_dots_error() const;                // max |est_dots - dense recompute|
    double enforcement_budget() const;            // 16 (ln n / eps^2) log2 T

private:
    void rescan();
    void rebuild_estimates();
    void refresh_estimate(std::size_t j);
    void enforce_row(std::size_t i);
    void freeze();
    void certify();

    CoveringInstance inst_;
    WhackEngine eng_;
    std::vector<std::int64_t> zexp_;   // z-hat_j = (1+eps)^zexp_j in true units
    std::vector<double> est_dots_;     // (C z-hat / W)_i
    std::vector<std::int64_t> enforce_log_;
    DynamicStats stats_;
    Outcome current_;
    bool terminal_ = false;
};

// Smallest k >= 0 with (1+eps)^k >= value (value given as its natural log).
std::int64_t power_exponent_at_least(double log_value, double eps);

}  // namespace mwu
