#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mwu/instance.hpp"

namespace mwu {

struct GreedyOptions {
    bool audit = false;  // re-verify the weight invariants and the step oracle as the run goes
};

struct GreedyStats {
    std::int64_t boosts = 0;
    std::int64_t phases = 0;          // Iterate passes
    std::int64_t heap_readjusts = 0;
    std::int64_t weight_resets = 0;   // approximate weight refreshed from the exact one
    std::int64_t pseudo_updates = 0;  // padding column touched
    std::int64_t events = 0;
    std::int64_t translations_applied = 0;
    std::int64_t translations_filtered = 0;
    std::int64_t rebases = 0;
    std::vector<std::int64_t> boosts_per_coordinate;
};

struct GreedyAudit {
    std::int64_t checks = 0;
    std::int64_t failures = 0;
    std::int64_t delta_checks = 0;
    std::string first_failure;
    double worst_delta_low = 1.0;   // min over boosts of delta / exact delta
    double worst_delta_high = 0.0;  // max over boosts of delta / exact delta
};

// Greedy MWU for Px <= 1, Cx >= 1 under relaxing updates (P entries
// shrinking, C entries growing, right-hand sides loosening). The point has a
// padding coordinate fixed at 1 whose packing column absorbs shrinkage of P
// so that packing weights never decrease.
class GreedyPositiveSolver {
public:
    explicit GreedyPositiveSolver(PositiveInstance inst, GreedyOptions opt = {});

    bool solved() const { return solved_; }
    Outcome outcome() const;  // PositiveSolution(x) or Infeasible
    Outcome handle_update(const UpdateEvent& ev);

    // y_j = w_c(j) / w_c over covering rows; only once the run is infeasible.
    std::vector<double> extract_packing_dual() const;

    std::size_t cols() const { return n_; }
    double eta() const { return eta_; }
    double eps() const { return eps_; }
    std::span<const double> point() const { return x_; }  // n + 1 entries
    const SparseNonnegMatrix& packing() const { return P_; }  // scaled, with padding column
    const SparseNonnegMatrix& covering() const { return C_; }  // scaled
    std::span<const double> packing_dots() const { return pdot_; }
    std::span<const double> covering_dots() const { return cdot_; }

    // Exact cost of coordinate k; throws UnboundedCost when column k of C is empty.
    long double coordinate_cost(std::size_t k) const;
    // Exact ratio lambda(k) / lambda_0, i.e. <grad f_p, e_k> / <grad f_c, e_k>.
    double relative_cost(std::size_t k) const;
    long double log_ratio() const;  // ln lambda_0
    bool cheap(std::size_t k) const;   // by the approximate test
    std::pair<double, double> soft_potentials() const;

    double heap_delta(std::size_t k) const;  // step the oracle would take, 0 when empty
    double exact_delta(std::size_t k) const;

    // Test hook: move to an arbitrary point and recompute every weight exactly.
    void reset_point(std::span<const double> x);

    const GreedyStats& stats() const { return stats_; }
    const GreedyAudit& audit() const { return audit_; }
    double boost_budget() const;  // 64 ln^2(m_p + m_c + U/L) / eps^2
    double phase_budget() const;  // 64 ln(m_p + m_c + U/L) / eps^2
    // Invariant on the approximate weights; fills `why` on failure.
    bool invariant_holds(double rel_tol, std::string* why = nullptr, bool check_ratio = true) const;

private:
    using HeapKey = std::pair<double, std::size_t>;
    struct Heap {
        std::set<HeapKey> order;
        std::map<std::size_t, double> stored;
    };

    void build();
    void recompute_weights();
    void rebuild_heaps();
    void recompute_column_sums(std::size_t k);
    void heap_put(std::size_t k, std::size_t id, double v);
    void heap_erase(std::size_t k, std::size_t id);
    void deactivate(std::size_t j);
    void set_pdot(std::size_t i, double v);
    void set_cdot(std::size_t j, double v);
    void maybe_rebase();
    void refresh_totals_if_needed();

    void iterate();
    bool boost(std::size_t k);  // false when the step oracle has nothing to offer
    void boost_while_cheap(std::size_t k);
    void update_p_weights(std::size_t k);
    void update_c_weights(std::size_t k);
    bool stale_ratio() const;
    void update_p(std::size_t i, std::size_t k, double value);
    void update_c(std::size_t j, std::size_t k, double value);
    void run_audit(const char* where);
    void fail(const std::string& what);

    double wp_exact(std::size_t i) const;
    double wc_exact(std::size_t j) const;

    PositiveInstance inst_;  // true data; P_ and C_ hold the translated view
    GreedyOptions opt_;
    std::size_t n_, mp_, mc_;
    double eps_, eta_;
    SparseNonnegMatrix P_, C_;
    std::vector<double> rhs_p_, rhs_c_, applied_p_, applied_c_;
    std::vector<double> x_;
    std::vector<double> pdot_, cdot_;
    // Weights are stored as exp(+-eta*dot - offset); offsets keep them in range.
    double off_p_ = 0.0, off_c_ = 0.0;
    std::vector<double> wp_, wc_, hwp_, hwc_;
    long double Wp_ = 0.0, Wc_ = 0.0, Wp_ref_ = 0.0, Wc_ref_ = 0.0;
    std::vector<long double> A_, B_, B_ref_;  // approximate cost numerators / denominators
    long double hat_ratio_ = 1.0;  // lambda-hat_0 in stored units
    long double wstar_c_ = 0.0;
    std::vector<char> active_;
    std::size_t unsatisfied_ = 0;
    bool solved_ = false;
    std::vector<Heap> heaps_;
    GreedyStats stats_;
    GreedyAudit audit_;
    long double last_log_wp_ = 0.0, last_log_wc_ = 0.0;
};

Outcome solve_static_positive(const PositiveInstance& inst, GreedyOptions opt = {});

// The encoding 1^T x <= 1, Cx >= 1 used to certify packing values.
PositiveInstance positive_encoding(const SparseNonnegMatrix& C, double eps = 1.0 / 200.0);

// (1/eta) ln sum exp(eta v) and -(1/eta) ln sum exp(-eta v), max-shifted.
double soft_max(std::span<const double> v, double eta);
double soft_min(std::span<const double> v, double eta);

}  // namespace mwu
