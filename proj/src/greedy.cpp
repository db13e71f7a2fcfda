#include "mwu/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mwu/exact.hpp"
#include "mwu/kernels.hpp"

namespace mwu {

namespace {

constexpr double kHigh = 1e150;
constexpr double kLow = 1e-150;
constexpr double kCheapSlack = 5.0;

bool close_rel(long double a, long double b, double tol) {
    return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b)) + 1e-300L;
}

}  // namespace

double soft_max(std::span<const double> v, double eta) {
    if (v.empty()) return -std::numeric_limits<double>::infinity();
    double top = *std::max_element(v.begin(), v.end());
    long double s = 0.0;
    for (double t : v) s += std::exp(static_cast<long double>(eta) * (t - top));
    return top + static_cast<double>(std::log(s) / eta);
}

double soft_min(std::span<const double> v, double eta) {
    if (v.empty()) return std::numeric_limits<double>::infinity();
    double low = *std::min_element(v.begin(), v.end());
    long double s = 0.0;
    for (double t : v) s += std::exp(-static_cast<long double>(eta) * (t - low));
    return low - static_cast<double>(std::log(s) / eta);
}

GreedyPositiveSolver::GreedyPositiveSolver(PositiveInstance inst, GreedyOptions opt)
    : inst_(std::move(inst)), opt_(opt) {
    for (const auto& issue : validate(inst_)) {
        // The library accepts eps up to 1/10 (the step analysis still holds);
        // only the output constant is tied to 1/200.
        if (issue.kind == ErrorKind::EpsOutOfRange && inst_.eps > 0.0 && inst_.eps <= 0.1) continue;
        throw Error(issue.kind, issue.detail);
    }
    n_ = inst_.P.cols();
    mp_ = inst_.P.rows();
    mc_ = inst_.C.rows();
    eps_ = inst_.eps;
    eta_ = std::log(static_cast<double>(mp_ + mc_) + inst_.U / inst_.L) / eps_;
    rhs_p_.assign(mp_, 1.0);
    applied_p_.assign(mp_, 1.0);
    rhs_c_.assign(mc_, 1.0);
    applied_c_.assign(mc_, 1.0);

    P_ = SparseNonnegMatrix(mp_, n_ + 1);
    for (std::size_t i = 0; i < mp_; ++i)
        for (const auto& e : inst_.P.row(i)) P_.set(i, e.index, e.value);
    C_ = inst_.C;
    x_.assign(n_ + 1, 0.0);
    x_[n_] = 1.0;
    stats_.boosts_per_coordinate.assign(n_, 0);
    build();
    if (!solved_) iterate();
    if (opt_.audit) run_audit("initial run");
}

void GreedyPositiveSolver::build() {
    pdot_ = kernels::row_products(P_, x_);
    std::vector<double> xs(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_));
    cdot_ = kernels::row_products(C_, xs);
    unsatisfied_ = 0;
    active_.assign(mc_, 1);
    for (std::size_t j = 0; j < mc_; ++j) {
        if (cdot_[j] < 1.0) ++unsatisfied_;
        if (cdot_[j] >= 2.0) active_[j] = 0;
    }
    solved_ = unsatisfied_ == 0;
    recompute_weights();
    rebuild_heaps();
    hat_ratio_ = Wp_ / Wc_;
    last_log_wp_ = std::log(Wp_) + off_p_;
    last_log_wc_ = std::log(Wc_) + off_c_;
}

double GreedyPositiveSolver::wp_exact(std::size_t i) const { return std::exp(eta_ * pdot_[i] - off_p_); }
double GreedyPositiveSolver::wc_exact(std::size_t j) const { return std::exp(-eta_ * cdot_[j] - off_c_); }

void GreedyPositiveSolver::recompute_weights() {
    // Offsets chosen so each total is about 1.
    double top = mp_ ? *std::max_element(pdot_.begin(), pdot_.end()) : 0.0;
    double low = mc_ ? *std::min_element(cdot_.begin(), cdot_.end()) : 0.0;
    off_p_ = eta_ * top;
    off_c_ = -eta_ * low;
    wp_.resize(mp_);
    wc_.resize(mc_);
    Wp_ = 0.0;
    Wc_ = 0.0;
    for (std::size_t i = 0; i < mp_; ++i) Wp_ += wp_[i] = wp_exact(i);
    for (std::size_t j = 0; j < mc_; ++j) Wc_ += wc_[j] = wc_exact(j);
    if (mp_ == 0) Wp_ = 0.0;
    Wp_ref_ = Wp_;
    Wc_ref_ = Wc_;
    hwp_ = wp_;
    hwc_ = wc_;
    A_.assign(n_ + 1, 0.0);
    B_.assign(n_ + 1, 0.0);
    B_ref_.assign(n_ + 1, 0.0);
    for (std::size_t k = 0; k <= n_; ++k) recompute_column_sums(k);
}

void GreedyPositiveSolver::recompute_column_sums(std::size_t k) {
    long double a = 0.0, b = 0.0;
    for (const auto& e : P_.col(k)) a += static_cast<long double>(hwp_[e.index]) * e.value;
    if (k < n_)
        for (const auto& e : C_.col(k)) b += static_cast<long double>(hwc_[e.index]) * e.value;
    A_[k] = a;
    B_[k] = b;
    B_ref_[k] = b;
}

void GreedyPositiveSolver::refresh_totals_if_needed() {
    // Totals that only shrink are re-summed once they halve, which bounds the
    // cancellation error of the running sum.
    if (Wc_ < 0.5L * Wc_ref_) {
        Wc_ = 0.0;
        for (double w : wc_) Wc_ += w;
        Wc_ref_ = Wc_;
    }
}

void GreedyPositiveSolver::rebuild_heaps() {
    heaps_.assign(n_, Heap{});
    for (std::size_t k = 0; k < n_; ++k) {
        for (const auto& e : P_.col(k)) heap_put(k, e.index, e.value);
        for (const auto& e : C_.col(k))
            if (active_[e.index]) heap_put(k, mp_ + e.index, e.value);
    }
}

void GreedyPositiveSolver::heap_put(std::size_t k, std::size_t id, double v) {
    auto& h = heaps_[k];
    auto it = h.stored.find(id);
    if (it != h.stored.end()) {
        h.order.erase({it->second, id});
        it->second = v;
    } else {
        h.stored.emplace(id, v);
    }
    h.order.insert({v, id});
}

void GreedyPositiveSolver::heap_erase(std::size_t k, std::size_t id) {
    auto& h = heaps_[k];
    auto it = h.stored.find(id);
    if (it == h.stored.end()) return;
    h.order.erase({it->second, id});
    h.stored.erase(it);
}

void GreedyPositiveSolver::deactivate(std::size_t j) {
    if (!active_[j]) return;
    active_[j] = 0;
    for (const auto& e : C_.row(j)) heap_erase(e.index, mp_ + j);
}

void GreedyPositiveSolver::set_pdot(std::size_t i, double v) {
    pdot_[i] = v;
    double w = wp_exact(i);
    Wp_ += static_cast<long double>(w) - wp_[i];
    wp_[i] = w;
}

void GreedyPositiveSolver::set_cdot(std::size_t j, double v) {
    const double before = cdot_[j];
    cdot_[j] = v;
    if (before < 1.0 && v >= 1.0) --unsatisfied_;
    if (v >= 2.0) deactivate(j);
    double w = wc_exact(j);
    Wc_ += static_cast<long double>(w) - wc_[j];
    wc_[j] = w;
}

void GreedyPositiveSolver::maybe_rebase() {
    if (Wp_ > kHigh) {
        const long double f = Wp_;
        off_p_ += static_cast<double>(std::log(f));
        Wp_ = 0.0;
        for (std::size_t i = 0; i < mp_; ++i) {
            Wp_ += wp_[i] = wp_exact(i);
            hwp_[i] = static_cast<double>(hwp_[i] / f);
            if (hwp_[i] > wp_[i] || hwp_[i] < wp_[i] * (1.0 - eps_)) hwp_[i] = wp_[i];
        }
        Wp_ref_ = Wp_;
        for (std::size_t k = 0; k <= n_; ++k) recompute_column_sums(k);
        hat_ratio_ /= f;
        ++stats_.rebases;
    }
    refresh_totals_if_needed();
    if (mc_ && Wc_ < kLow) {
        const long double f = Wc_;
        off_c_ += static_cast<double>(std::log(f));
        Wc_ = 0.0;
        for (std::size_t j = 0; j < mc_; ++j) {
            Wc_ += wc_[j] = wc_exact(j);
            hwc_[j] = static_cast<double>(hwc_[j] / f);
            // An approximation that underflowed earlier is re-anchored here.
            if (hwc_[j] < wc_[j] || hwc_[j] > wc_[j] * (1.0 + eps_)) hwc_[j] = wc_[j];
        }
        Wc_ref_ = Wc_;
        for (std::size_t k = 0; k <= n_; ++k) recompute_column_sums(k);
        hat_ratio_ *= f;
        ++stats_.rebases;
    }
}

bool GreedyPositiveSolver::cheap(std::size_t k) const {
    if (k >= n_ || B_[k] <= 0.0L) return false;
    return A_[k] * Wc_ <= (1.0L + kCheapSlack * eps_) * Wp_ * B_[k];
}

bool GreedyPositiveSolver::stale_ratio() const { return hat_ratio_ < (Wp_ / Wc_) * (1.0L - eps_); }

double GreedyPositiveSolver::heap_delta(std::size_t k) const {
    const auto& h = heaps_[k];
    if (h.order.empty()) return 0.0;
    return eps_ / (2.0 * eta_ * h.order.rbegin()->first);
}

double GreedyPositiveSolver::exact_delta(std::size_t k) const {
    std::vector<double> pcol, ccol;
    for (const auto& e : P_.col(k)) pcol.push_back(e.value);
    for (const auto& e : C_.col(k))
        if (cdot_[e.index] < 2.0) ccol.push_back(e.value);
    return exact::brute_force_delta(pcol, ccol, eps_, eta_);
}

bool GreedyPositiveSolver::boost(std::size_t k) {
    const double delta = heap_delta(k);
    if (delta <= 0.0) return false;
    if (opt_.audit) {
        const double ref = exact_delta(k);
        const double r = delta / ref;
        ++audit_.delta_checks;
        audit_.worst_delta_low = std::min(audit_.worst_delta_low, r);
        audit_.worst_delta_high = std::max(audit_.worst_delta_high, r);
        if (r < 0.25 * (1.0 - 1e-12) || r > 1.0 + 1e-12) {
            std::ostringstream s;
            s << "heap step " << delta << " outside [d/4, d] for d = " << ref << " on coordinate " << k;
            fail(s.str());
        }
    }
    x_[k] += delta;
    ++stats_.boosts;
    ++stats_.boosts_per_coordinate[k];
    for (const auto& e : C_.col(k)) set_cdot(e.index, cdot_[e.index] + e.value * delta);
    for (const auto& e : P_.col(k)) set_pdot(e.index, pdot_[e.index] + e.value * delta);
    maybe_rebase();
    update_p_weights(k);
    update_c_weights(k);
    if (unsatisfied_ == 0) solved_ = true;
    if (opt_.audit && !solved_) run_audit("boost");
    return true;
}

void GreedyPositiveSolver::update_p_weights(std::size_t k) {
    for (const auto& e : P_.col(k)) {
        const std::size_t i = e.index;
        if (!(hwp_[i] < wp_[i] * (1.0 - eps_) || hwp_[i] > wp_[i])) continue;
        const long double diff = static_cast<long double>(wp_[i]) - hwp_[i];
        hwp_[i] = wp_[i];
        ++stats_.weight_resets;
        for (const auto& f : P_.row(i)) A_[f.index] += diff * f.value;
    }
}

void GreedyPositiveSolver::update_c_weights(std::size_t k) {
    for (const auto& e : C_.col(k)) {
        const std::size_t j = e.index;
        // The second test catches an approximation that underflowed before a rebase.
        if (!(hwc_[j] > wc_[j] * (1.0 + eps_) || hwc_[j] < wc_[j])) continue;
        const long double diff = static_cast<long double>(wc_[j]) - hwc_[j];
        hwc_[j] = wc_[j];
        ++stats_.weight_resets;
        for (const auto& f : C_.row(j)) {
            B_[f.index] += diff * f.value;
            if (B_[f.index] < 0.5L * B_ref_[f.index]) recompute_column_sums(f.index);
        }
    }
}

void GreedyPositiveSolver::boost_while_cheap(std::size_t k) {
    while (!solved_ && cheap(k))
        if (!boost(k)) break;
}

void GreedyPositiveSolver::iterate() {
    do {
        hat_ratio_ = Wp_ / Wc_;
        wstar_c_ = Wc_;
        ++stats_.phases;
        for (std::size_t k = 0; k < n_ && !solved_; ++k) boost_while_cheap(k);
        if (solved_) return;
    } while (stale_ratio());
}

Outcome GreedyPositiveSolver::outcome() const {
    if (solved_) return Outcome{OutcomeTag::PositiveSolution, std::vector<double>(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_))};
    return Outcome{OutcomeTag::Infeasible, {}};
}

void GreedyPositiveSolver::update_p(std::size_t i, std::size_t k, double value) {
    const double old = P_.at(i, k);
    if (!(value < old)) return;
    const double shrink = old - value;
    P_.set(i, k, value);
    if (x_[k] > 0.0) {
        // The padding coordinate is 1, so this keeps P*_i x* and w_p(i) unchanged.
        P_.set(i, n_, P_.at(i, n_) + shrink * x_[k]);
        A_[n_] += static_cast<long double>(hwp_[i]) * shrink * x_[k];
        ++stats_.pseudo_updates;
    }
    recompute_column_sums(k);
    if (value == 0.0) {
        heap_erase(k, i);
    } else {
        auto it = heaps_[k].stored.find(i);
        if (it == heaps_[k].stored.end() || it->second > 2.0 * value) {
            heap_put(k, i, value);
            ++stats_.heap_readjusts;
        }
    }
    if (solved_) return;
    boost_while_cheap(k);
    if (!solved_ && stale_ratio()) iterate();
}

void GreedyPositiveSolver::update_c(std::size_t j, std::size_t k, double value) {
    const double old = C_.at(j, k);
    if (!(value > old)) return;
    const double grow = value - old;
    C_.set(j, k, value);
    B_[k] += static_cast<long double>(hwc_[j]) * grow;
    B_ref_[k] = std::max(B_ref_[k], B_[k]);
    if (active_[j]) {
        auto it = heaps_[k].stored.find(mp_ + j);
        if (it == heaps_[k].stored.end() || value > 2.0 * it->second) {
            heap_put(k, mp_ + j, value);
            ++stats_.heap_readjusts;
        }
    }
    set_cdot(j, cdot_[j] + grow * x_[k]);
    if (solved_) return;
    if (unsatisfied_ == 0) {
        solved_ = true;
        return;
    }
    maybe_rebase();
    // The covering weight only falls, so the approximation resets from above.
    if (wc_[j] < hwc_[j] / (1.0 + eps_) || hwc_[j] < wc_[j]) {
        const long double diff = static_cast<long double>(wc_[j]) - hwc_[j];
        hwc_[j] = wc_[j];
        ++stats_.weight_resets;
        for (const auto& f : C_.row(j)) {
            B_[f.index] += diff * f.value;
            if (B_[f.index] < 0.5L * B_ref_[f.index]) recompute_column_sums(f.index);
        }
        for (const auto& f : C_.row(j)) boost_while_cheap(f.index);
    }
    boost_while_cheap(k);
    if (!solved_ && stale_ratio()) iterate();
}

Outcome GreedyPositiveSolver::handle_update(const UpdateEvent& ev) {
    ++stats_.events;
    switch (ev.kind) {
    case UpdateKind::RelaxPackingEntry: {
        if (ev.col >= n_) throw Error(ErrorKind::IndexOutOfRange, "column out of range");
        apply_update(inst_.P, ev);
        update_p(ev.row, ev.col, ev.new_value / applied_p_[ev.row]);
        break;
    }
    case UpdateKind::RelaxCoveringEntry: {
        apply_update(inst_.C, ev);
        update_c(ev.row, ev.col, ev.new_value / applied_c_[ev.row]);
        break;
    }
    case UpdateKind::TranslatePacking: {
        const std::size_t i = ev.row;
        if (i >= mp_) throw Error(ErrorKind::IndexOutOfRange, "packing row out of range");
        if (!(ev.new_value > rhs_p_[i])) throw Error(ErrorKind::NonMonotoneUpdate, "packing bound may only grow");
        rhs_p_[i] = ev.new_value;
        if (rhs_p_[i] < applied_p_[i] * (1.0 + eps_)) {
            ++stats_.translations_filtered;
            break;
        }
        applied_p_[i] = rhs_p_[i];
        ++stats_.translations_applied;
        for (const auto& e : inst_.P.row(i)) update_p(i, e.index, e.value / applied_p_[i]);
        break;
    }
    case UpdateKind::TranslateCovering: {
        const std::size_t j = ev.row;
        if (j >= mc_) throw Error(ErrorKind::IndexOutOfRange, "covering row out of range");
        if (!(ev.new_value < rhs_c_[j])) throw Error(ErrorKind::NonMonotoneUpdate, "covering bound may only shrink");
        if (!(ev.new_value > 0.0)) throw Error(ErrorKind::PreconditionViolated, "covering bound must stay positive");
        rhs_c_[j] = ev.new_value;
        if (applied_c_[j] < rhs_c_[j] * (1.0 + eps_)) {
            ++stats_.translations_filtered;
            break;
        }
        applied_c_[j] = rhs_c_[j];
        ++stats_.translations_applied;
        for (const auto& e : inst_.C.row(j)) update_c(j, e.index, e.value / applied_c_[j]);
        break;
    }
    default:
        throw Error(ErrorKind::NonMonotoneUpdate, "restricting update on a relaxing-only solver");
    }
    if (opt_.audit && !solved_) run_audit("event");
    return outcome();
}

std::vector<double> GreedyPositiveSolver::extract_packing_dual() const {
    if (solved_) throw Error(ErrorKind::NotInfeasibleYet, "the run found a solution");
    std::vector<double> y(mc_);
    long double total = 0.0;
    for (double w : wc_) total += w;
    for (std::size_t j = 0; j < mc_; ++j) y[j] = static_cast<double>(wc_[j] / total);
    return y;
}

long double GreedyPositiveSolver::coordinate_cost(std::size_t k) const {
    if (k >= n_ || C_.col(k).empty()) throw Error(ErrorKind::UnboundedCost, "coordinate has no covering entries");
    long double num = 0.0, den = 0.0;
    for (const auto& e : P_.col(k)) num += static_cast<long double>(wp_exact(e.index)) * e.value;
    for (const auto& e : C_.col(k)) den += static_cast<long double>(wc_exact(e.index)) * e.value;
    return num / den * std::exp(static_cast<long double>(off_p_) - off_c_);
}

double GreedyPositiveSolver::relative_cost(std::size_t k) const {
    if (k >= n_ || C_.col(k).empty()) throw Error(ErrorKind::UnboundedCost, "coordinate has no covering entries");
    long double num = 0.0, den = 0.0, wp = 0.0, wc = 0.0;
    for (std::size_t i = 0; i < mp_; ++i) wp += wp_exact(i);
    for (std::size_t j = 0; j < mc_; ++j) wc += wc_exact(j);
    for (const auto& e : P_.col(k)) num += static_cast<long double>(wp_exact(e.index)) * e.value;
    for (const auto& e : C_.col(k)) den += static_cast<long double>(wc_exact(e.index)) * e.value;
    return static_cast<double>((num / wp) / (den / wc));
}

long double GreedyPositiveSolver::log_ratio() const {
    return std::log(Wp_) + off_p_ - std::log(Wc_) - off_c_;
}

std::pair<double, double> GreedyPositiveSolver::soft_potentials() const {
    return {soft_max(pdot_, eta_), soft_min(cdot_, eta_)};
}

void GreedyPositiveSolver::reset_point(std::span<const double> x) {
    if (x.size() != n_) throw Error(ErrorKind::PreconditionViolated, "point length");
    std::copy(x.begin(), x.end(), x_.begin());
    build();
}

double GreedyPositiveSolver::boost_budget() const {
    double l = std::log(static_cast<double>(mp_ + mc_) + inst_.U / inst_.L);
    return 64.0 * l * l / (eps_ * eps_);
}

double GreedyPositiveSolver::phase_budget() const {
    return 64.0 * std::log(static_cast<double>(mp_ + mc_) + inst_.U / inst_.L) / (eps_ * eps_);
}

bool GreedyPositiveSolver::invariant_holds(double tol, std::string* why, bool check_ratio) const {
    auto bad = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    for (std::size_t j = 0; j < mc_; ++j) {
        const double w = wc_exact(j);
        if (hwc_[j] < w * (1.0 - tol) || hwc_[j] > w * (1.0 + eps_) * (1.0 + tol))
            return bad("covering weight approximation out of band at row " + std::to_string(j) + " (approx " +
                       std::to_string(hwc_[j] / w) + " of exact)");
    }
    for (std::size_t i = 0; i < mp_; ++i) {
        const double w = wp_exact(i);
        if (hwp_[i] > w * (1.0 + tol) || hwp_[i] < w * (1.0 - eps_) * (1.0 - tol))
            return bad("packing weight approximation out of band at row " + std::to_string(i) + " (approx " +
                       std::to_string(hwp_[i] / w) + " of exact)");
    }
    for (std::size_t k = 0; k <= n_; ++k) {
        long double a = 0.0, b = 0.0;
        for (const auto& e : P_.col(k)) a += static_cast<long double>(hwp_[e.index]) * e.value;
        if (k < n_)
            for (const auto& e : C_.col(k)) b += static_cast<long double>(hwc_[e.index]) * e.value;
        if (!close_rel(a, A_[k], tol)) return bad("approximate cost numerator drifted at column " + std::to_string(k));
        if (!close_rel(b, B_[k], tol)) return bad("approximate cost denominator drifted at column " + std::to_string(k));
    }
    long double wp = 0.0, wc = 0.0;
    for (std::size_t i = 0; i < mp_; ++i) wp += wp_exact(i);
    for (std::size_t j = 0; j < mc_; ++j) wc += wc_exact(j);
    if (!close_rel(wp, Wp_, tol) || !close_rel(wc, Wc_, tol)) return bad("weight totals drifted");
    if (check_ratio && !solved_ && hat_ratio_ < (wp / wc) * (1.0L - eps_) * (1.0L - tol))
        return bad("stale lambda-hat_0 below (1-eps) lambda_0");
    return true;
}

void GreedyPositiveSolver::fail(const std::string& what) {
    ++audit_.failures;
    if (audit_.first_failure.empty()) audit_.first_failure = what;
}

void GreedyPositiveSolver::run_audit(const char* where) {
    ++audit_.checks;
    std::string why;
    // Mid-boost the ratio check may lag until the caller re-runs Iterate.
    if (!invariant_holds(1e-9, &why, std::string(where) != "boost")) fail(std::string(where) + ": " + why);
    auto [fp, fc] = soft_potentials();
    if (mp_) {
        double top = *std::max_element(pdot_.begin(), pdot_.end());
        if (fp < top - 1e-9 || fp > top + eps_ + 1e-9) fail(std::string(where) + ": packing soft-max sandwich");
    }
    if (mc_) {
        double low = *std::min_element(cdot_.begin(), cdot_.end());
        if (fc > low + 1e-9 || fc < low - eps_ - 1e-9) fail(std::string(where) + ": covering soft-min sandwich");
    }
    long double lwp = std::log(Wp_) + off_p_, lwc = std::log(Wc_) + off_c_;
    if (mp_ && lwp < last_log_wp_ - 1e-9) fail(std::string(where) + ": packing weight total fell");
    if (mc_ && lwc > last_log_wc_ + 1e-9) fail(std::string(where) + ": covering weight total rose");
    last_log_wp_ = lwp;
    last_log_wc_ = lwc;
    for (std::size_t k = 0; k < n_; ++k)
        if (static_cast<double>(stats_.boosts_per_coordinate[k]) > boost_budget())
            fail(std::string(where) + ": boost budget exceeded on coordinate " + std::to_string(k));
}

Outcome solve_static_positive(const PositiveInstance& inst, GreedyOptions opt) {
    return GreedyPositiveSolver(inst, opt).outcome();
}

PositiveInstance positive_encoding(const SparseNonnegMatrix& C, double eps) {
    PositiveInstance p;
    p.P = SparseNonnegMatrix(1, C.cols());
    for (std::size_t k = 0; k < C.cols(); ++k) p.P.set(0, k, 1.0);
    p.C = C;
    p.L = std::min(1.0, C.nnz() ? C.min_nonzero() : 1.0);
    p.U = std::max(1.0, C.max_value());
    p.eps = eps;
    return p;
}

}  // namespace mwu
