#include <algorithm>
#include <cmath>

#include "mwu/whack.hpp"

namespace mwu {

double WeightVector::log_total() const { return std::log(sum_) + log_scale_; }

double WeightVector::log_true(std::size_t j) const { return std::log(w_[j]) + log_scale_; }

void WeightVector::scale_entry(std::size_t j, double factor) {
    double old = w_[j];
    w_[j] = old * factor;
    sum_ += w_[j] - old;
}

void WeightVector::resum() {
    double s = 0.0;
    for (double v : w_) s += v;
    sum_ = s;
}

void WeightVector::rebase(double d) {
    for (double& v : w_) v /= d;
    sum_ /= d;
    log_scale_ += std::log(d);
}

double row_ratio(std::span<const Entry> row, std::span<const double> xh, double W) {
    double s = 0.0;
    for (const auto& e : row) s += e.value * xh[e.index];
    return s / W;
}

std::int64_t step_size(std::span<const Entry> row, std::span<const double> xh, double W,
                       double eps, double lambda, std::int64_t remaining) {
    if (remaining < 1) throw Error(ErrorKind::PreconditionViolated, "no rounds left");
    if (row_ratio(row, xh, W) >= 1.0 - eps / 2.0)
        throw Error(ErrorKind::PreconditionViolated, "constraint already near-satisfied");

    std::vector<double> growth(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) growth[k] = std::log1p(eps * row[k].value / lambda);
    auto reaches = [&](std::int64_t kappa) {
        double s = 0.0;
        for (std::size_t k = 0; k < row.size(); ++k)
            s += row[k].value * xh[row[k].index] * std::exp(static_cast<double>(kappa) * growth[k]);
        return s / W >= 1.0;
    };

    if (!reaches(remaining)) return remaining;
    // Doubling for an upper bracket, then bisection on (lo, hi].
    std::int64_t hi = 1;
    while (hi < remaining && !reaches(hi)) hi = std::min(remaining, hi * 2);
    std::int64_t lo = hi / 2;  // reaches(lo) is false (or lo == 0)
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (reaches(mid)) hi = mid; else lo = mid;
    }
    return hi;
}

void whack(std::span<const Entry> row, std::vector<double>& xh, double eps, double lambda,
           std::int64_t delta) {
    for (const auto& e : row)
        xh[e.index] *= std::exp(static_cast<double>(delta) * std::log1p(eps * e.value / lambda));
}

WhackEngine::WhackEngine(std::size_t n, double lambda, double eps, std::int64_t T, bool keep_counts)
    : n_(n), lambda_(lambda), eps_(eps), T_(T), keep_counts_(keep_counts), x_(n) {
    W_ = x_.stored_sum();
    stats_.max_log_weight = x_.log_total();
}

void WhackEngine::ensure_rows(std::size_t m) {
    if (keep_counts_ && counts_.size() < m) counts_.resize(m, 0);
}

void WhackEngine::observe_weight() {
    stats_.max_log_weight = std::max(stats_.max_log_weight, x_.log_total());
}

void WhackEngine::start_phase() {
    x_.resum();
    observe_weight();
    x_.rebase(x_.stored_sum());
    W_ = x_.stored_sum();
    ++stats_.phases;
}

std::int64_t WhackEngine::enforce(std::size_t i, std::span<const Entry> row) {
    std::int64_t delta = step_size(row, x_.stored(), W_, eps_, lambda_, T_ - t_);
    for (const auto& e : row)
        x_.scale_entry(e.index, std::exp(static_cast<double>(delta) * std::log1p(eps_ * e.value / lambda_)));
    if (keep_counts_) {
        ensure_rows(i + 1);
        counts_[i] += delta;
    }
    t_ += delta;
    ++stats_.enforcements;
    stats_.whacks += delta;
    if (trace) trace->push_back({i, delta});
    observe_weight();
    return delta;
}

std::vector<double> WhackEngine::normalized() const {
    std::vector<double> out(x_.stored().begin(), x_.stored().end());
    double s = x_.stored_sum();
    for (double& v : out) v /= s;
    return out;
}

std::vector<double> WhackEngine::anchored() const {
    std::vector<double> out(x_.stored().begin(), x_.stored().end());
    for (double& v : out) v /= W_;
    return out;
}

std::vector<double> WhackEngine::dual() const {
    std::vector<double> y(counts_.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<double>(counts_[i]) / static_cast<double>(T_);
    return y;
}

double log_weight_cap(std::size_t n, double eps) {
    return std::log(static_cast<double>(std::max<std::size_t>(n, 2))) / eps;
}

std::int64_t phase_cap(std::size_t n, double eps) {
    double per_phase = -std::log1p(-eps / 2.0);
    return static_cast<std::int64_t>(std::ceil(log_weight_cap(n, eps) / per_phase)) + 1;
}

}  // namespace mwu
