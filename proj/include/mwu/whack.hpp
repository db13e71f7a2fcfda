#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mwu/instance.hpp"

namespace mwu {

// Expert weights x-hat, stored as stored[j] * exp(log_scale) so that the
// true values may exceed double range without the solver noticing.
class WeightVector {
public:
    explicit WeightVector(std::size_t n = 0) : w_(n, 1.0), sum_(static_cast<double>(n)) {}

    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t j) const { return w_[j]; }
    std::span<const double> stored() const { return w_; }
    double stored_sum() const { return sum_; }
    double log_scale() const { return log_scale_; }
    double log_total() const;          // ln of the true l1 norm
    double log_true(std::size_t j) const;

    void scale_entry(std::size_t j, double factor);
    void resum();
    // Divides every stored value by d and folds ln(d) into the scale.
    void rebase(double d);

private:
    std::vector<double> w_;
    double sum_ = 0.0;
    double log_scale_ = 0.0;
};

// Smallest k in [1, remaining] with sum_j C_ij (1 + eps C_ij/lambda)^k xh_j / W >= 1,
// or `remaining` when even that falls short.
std::int64_t step_size(std::span<const Entry> row, std::span<const double> xh, double W,
                       double eps, double lambda, std::int64_t remaining);

// (C xh / W)_i for a single row.
double row_ratio(std::span<const Entry> row, std::span<const double> xh, double W);

// Multiplies xh along the row by (1 + eps C_ij/lambda)^delta.
void whack(std::span<const Entry> row, std::vector<double>& xh, double eps, double lambda,
           std::int64_t delta = 1);

struct WhackStep {
    std::size_t row;
    std::int64_t delta;
};

struct WhackStats {
    std::int64_t phases = 0;
    std::int64_t enforcements = 0;
    std::int64_t whacks = 0;
    double max_log_weight = 0.0;  // ln of the largest observed ||x-hat||_1
};

// Phase machinery shared by the static, dynamic, streaming and online solvers.
// Rows are passed in by the caller; the engine never owns the matrix.
class WhackEngine {
public:
    WhackEngine(std::size_t n, double lambda, double eps, std::int64_t T, bool keep_counts);

    double eps() const { return eps_; }
    double lambda() const { return lambda_; }
    std::int64_t T() const { return T_; }
    std::int64_t t() const { return t_; }
    bool exhausted() const { return t_ >= T_; }
    const WeightVector& weights() const { return x_; }
    double anchor() const { return W_; }
    const WhackStats& stats() const { return stats_; }
    std::span<const std::int64_t> counts() const { return counts_; }
    bool keeps_counts() const { return keep_counts_; }

    void ensure_rows(std::size_t m);
    void start_phase();
    double ratio(std::span<const Entry> row) const { return row_ratio(row, x_.stored(), W_); }
    bool violated(std::span<const Entry> row) const { return ratio(row) < 1.0 - eps_ / 2.0; }
    std::int64_t enforce(std::size_t i, std::span<const Entry> row);
    bool weight_jumped() const { return x_.stored_sum() > W_ / (1.0 - eps_ / 2.0); }
    void observe_weight();

    std::vector<double> normalized() const;   // x-hat / ||x-hat||_1
    std::vector<double> anchored() const;     // x-hat / W
    std::vector<double> dual() const;         // counts / T

    std::vector<WhackStep>* trace = nullptr;  // optional whack log

private:
    std::size_t n_;
    double lambda_, eps_;
    std::int64_t T_;
    std::int64_t t_ = 0;
    bool keep_counts_;
    WeightVector x_;
    double W_ = 1.0;
    std::vector<std::int64_t> counts_;
    WhackStats stats_;
};

struct WhackRun {
    Outcome outcome;
    WhackStats stats;
    std::vector<WhackStep> trace;  // filled when requested
};

// Picks the row to whack given C x (x normalised); nullopt means "return x".
using RowSelector = std::function<std::optional<std::size_t>(std::span<const double> cx, std::int64_t t)>;

// One whack per round; the reference template.
WhackRun solve_basic(const CoveringInstance& inst, const RowSelector& select = {});

// Selector replaying a fixed row sequence, then asking for termination.
RowSelector scripted_selector(std::vector<std::size_t> rows);

// Expands (row, delta) steps into the per-round row sequence.
std::vector<std::size_t> expand_trace(std::span<const WhackStep> steps);

struct FastOptions {
    bool record_trace = false;
};

// Phase-based implementation with closed-form enforcement.
WhackRun solve_fast(const CoveringInstance& inst, const FastOptions& opt = {});

// Cap on the number of phases: ceil(log_{1/(1-eps/2)} n^{1/eps}) + 1.
std::int64_t phase_cap(std::size_t n, double eps);
// ln(n^{1/eps}), the weight cap in log form.
double log_weight_cap(std::size_t n, double eps);

}  // namespace mwu
