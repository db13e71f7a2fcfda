#include "mwu/whack_online.hpp"

namespace mwu {

OnlineWhackSolver::OnlineWhackSolver(std::size_t n, double lambda, double eps)
    : n_(n), eng_(n, lambda, eps, rounds_for(n, lambda, eps), true), seen_(0, n) {
    eng_.start_phase();
}

Outcome OnlineWhackSolver::current() const {
    if (terminated_) return Outcome{OutcomeTag::PackingDual, eng_.dual()};
    return Outcome{OutcomeTag::CoveringPrimal, eng_.anchored()};
}

void OnlineWhackSolver::new_phase_rescan() {
    // Every coordinate of x~ drops when W grows.
    for (;;) {
        eng_.start_phase();
        recourse_ += static_cast<std::int64_t>(n_);
        bool restart = false;
        for (std::size_t i = 0; i < seen_.rows() && !restart; ++i) {
            if (!eng_.violated(seen_.row(i))) continue;
            eng_.enforce(i, seen_.row(i));
            if (eng_.exhausted()) {
                terminated_ = true;
                return;
            }
            restart = eng_.weight_jumped();
        }
        if (!restart) return;
    }
}

OnlineStatus OnlineWhackSolver::insert_row(std::span<const Entry> row) {
    if (terminated_) throw Error(ErrorKind::RowAfterTermination, "online run already returned a dual");
    std::size_t i = seen_.add_row();
    for (const auto& e : row) {
        if (e.value > eng_.lambda()) throw Error(ErrorKind::EntryAboveLambda, "row entry above lambda");
        seen_.set(i, e.index, e.value);
    }
    eng_.ensure_rows(seen_.rows());
    if (eng_.violated(seen_.row(i))) {
        eng_.enforce(i, seen_.row(i));
        if (eng_.exhausted()) terminated_ = true;
        else if (eng_.weight_jumped()) new_phase_rescan();
    }
    return terminated_ ? OnlineStatus::Terminated : OnlineStatus::Maintained;
}

}  // namespace mwu
