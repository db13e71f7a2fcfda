#include "mwu/whack_dynamic.hpp"

#include <algorithm>
#include <cmath>

namespace mwu {

std::int64_t power_exponent_at_least(double log_value, double eps) {
    double k = std::ceil(log_value / std::log1p(eps) - 1e-12);
    return k < 0.0 ? 0 : static_cast<std::int64_t>(k);
}

DynamicWhackSolver::DynamicWhackSolver(CoveringInstance inst)
    : inst_(std::move(inst)),
      eng_(inst_.C.cols(), inst_.lambda, inst_.eps, rounds_for(inst_.C.cols(), inst_.lambda, inst_.eps), true),
      zexp_(inst_.C.cols(), 0),
      est_dots_(inst_.C.rows(), 0.0),
      enforce_log_(inst_.C.rows(), 0) {
    eng_.ensure_rows(inst_.C.rows());
    rescan();
}

double DynamicWhackSolver::estimate(std::size_t j) const {
    return std::exp(static_cast<double>(zexp_[j]) * std::log1p(inst_.eps) - eng_.weights().log_scale());
}

void DynamicWhackSolver::rebuild_estimates() {
    const auto& C = inst_.C;
    for (std::size_t j = 0; j < C.cols(); ++j)
        zexp_[j] = power_exponent_at_least(eng_.weights().log_true(j), inst_.eps);
    std::vector<double> z(C.cols());
    for (std::size_t j = 0; j < C.cols(); ++j) z[j] = estimate(j);
    for (std::size_t i = 0; i < C.rows(); ++i) est_dots_[i] = row_ratio(C.row(i), z, eng_.anchor());
    stats_.column_touches += static_cast<std::int64_t>(C.nnz());
    ++stats_.rebuilds;
}

void DynamicWhackSolver::refresh_estimate(std::size_t j) {
    double log_x = eng_.weights().log_true(j);
    if (log_x <= static_cast<double>(zexp_[j]) * std::log1p(inst_.eps) + 1e-12) return;
    double before = estimate(j);
    zexp_[j] = power_exponent_at_least(log_x, inst_.eps);
    double delta = (estimate(j) - before) / eng_.anchor();
    for (const auto& e : inst_.C.col(j)) est_dots_[e.index] += e.value * delta;
    stats_.column_touches += static_cast<std::int64_t>(inst_.C.col(j).size());
    ++stats_.estimate_refreshes;
}

void DynamicWhackSolver::enforce_row(std::size_t i) {
    auto row = inst_.C.row(i);
    eng_.enforce(i, row);
    ++enforce_log_[i];
    for (const auto& e : row) refresh_estimate(e.index);
}

void DynamicWhackSolver::freeze() {
    terminal_ = true;
    current_ = Outcome{OutcomeTag::PackingDual, eng_.dual()};
}

void DynamicWhackSolver::certify() { current_ = Outcome{OutcomeTag::CoveringPrimal, eng_.anchored()}; }

void DynamicWhackSolver::rescan() {
    const auto& C = inst_.C;
    for (;;) {
        eng_.start_phase();
        rebuild_estimates();
        bool restart = false;
        for (std::size_t i = 0; i < C.rows() && !restart; ++i) {
            if (!eng_.violated(C.row(i))) continue;
            enforce_row(i);
            if (eng_.exhausted()) {
                freeze();
                return;
            }
            restart = eng_.weight_jumped();
        }
        if (!restart) break;
    }
    certify();
}

Outcome DynamicWhackSolver::handle_update(const UpdateEvent& ev) {
    if (terminal_) throw Error(ErrorKind::UpdateAfterTerminal, "dual certificate is frozen");
    if (ev.kind != UpdateKind::RestrictCoveringEntry)
        throw Error(ErrorKind::NonMonotoneUpdate, "only restricting covering updates are supported");
    const double old = (ev.row < inst_.C.rows() && ev.col < inst_.C.cols()) ? inst_.C.at(ev.row, ev.col) : 0.0;
    apply_update(inst_.C, ev);
    ++stats_.updates;
    const std::size_t i = ev.row;
    est_dots_[i] -= (old - ev.new_value) * estimate(ev.col) / eng_.anchor();

    const double trigger = 1.0 - inst_.eps / 2.0;
    // est >= exact, so only values inside the (1+eps) band need the exact row.
    if (est_dots_[i] >= trigger * (1.0 + inst_.eps)) return current_;
    if (est_dots_[i] >= trigger) ++stats_.exact_rechecks;
    if (!eng_.violated(inst_.C.row(i))) return current_;

    enforce_row(i);
    if (eng_.exhausted()) freeze();
    else if (eng_.weight_jumped()) rescan();
    else certify();
    return current_;
}

bool DynamicWhackSolver::estimates_sandwiched(double rel_tol) const {
    const double lo = std::log1p(-rel_tol), hi = std::log1p(inst_.eps) + rel_tol;
    for (std::size_t j = 0; j < zexp_.size(); ++j) {
        double gap = static_cast<double>(zexp_[j]) * std::log1p(inst_.eps) - eng_.weights().log_true(j);
        if (gap < lo || gap > hi) return false;
    }
    return true;
}

double DynamicWhackSolver::est_dots_error() const {
    std::vector<double> z(zexp_.size());
    for (std::size_t j = 0; j < z.size(); ++j) z[j] = estimate(j);
    double worst = 0.0;
    for (std::size_t i = 0; i < inst_.C.rows(); ++i)
        worst = std::max(worst, std::abs(row_ratio(inst_.C.row(i), z, eng_.anchor()) - est_dots_[i]));
    return worst;
}

double DynamicWhackSolver::enforcement_budget() const {
    double n = static_cast<double>(std::max<std::size_t>(inst_.C.cols(), 2));
    return 16.0 * (std::log(n) / (inst_.eps * inst_.eps)) * std::log2(static_cast<double>(eng_.T()));
}

}  // namespace mwu
