#include "mwu/whack_packing.hpp"

#include <algorithm>
#include <cmath>

#include "mwu/kernels.hpp"

namespace mwu {

void whack_packing(std::span<const Entry> row, std::vector<double>& xh, double eps, double lambda,
                   std::int64_t delta) {
    for (const auto& e : row)
        xh[e.index] *= std::exp(static_cast<double>(delta) * std::log1p(-eps * e.value / lambda));
}

std::int64_t packing_step_size(std::span<const Entry> row, std::span<const double> xh, double W,
                               double eps, double lambda, std::int64_t remaining) {
    if (remaining < 1) throw Error(ErrorKind::PreconditionViolated, "no rounds left");
    std::vector<double> decay(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) decay[k] = std::log1p(-eps * row[k].value / lambda);
    auto reaches = [&](std::int64_t kappa) {
        double s = 0.0;
        for (std::size_t k = 0; k < row.size(); ++k)
            s += row[k].value * xh[row[k].index] * std::exp(static_cast<double>(kappa) * decay[k]);
        return s / W <= 1.0;
    };
    if (reaches(0)) throw Error(ErrorKind::PreconditionViolated, "packing row already satisfied");
    if (!reaches(remaining)) return remaining;
    std::int64_t hi = 1;
    while (hi < remaining && !reaches(hi)) hi = std::min(remaining, hi * 2);
    std::int64_t lo = hi / 2;
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (reaches(mid)) hi = mid; else lo = mid;
    }
    return hi;
}

WhackRun solve_packing_basic(const PackingInstance& inst) {
    const auto& P = inst.P;
    const std::size_t n = P.cols(), m = P.rows();
    const std::int64_t T = rounds_for(n, inst.lambda, inst.eps);
    WhackRun run;
    std::vector<double> xh(n, 1.0);
    std::vector<std::int64_t> counts(m, 0);
    for (std::int64_t t = 0; t < T; ++t) {
        double s = 0.0;
        for (double v : xh) s += v;
        for (double& v : xh) v /= s;  // rescale; only x = xh / |xh| is used
        auto px = kernels::row_products(P, xh);
        std::size_t pick = m;
        for (std::size_t i = 0; i < m && pick == m; ++i)
            if (px[i] > 1.0 + inst.eps) pick = i;
        if (pick == m) {
            run.outcome = Outcome{OutcomeTag::PackingPrimal, xh};
            return run;
        }
        whack_packing(P.row(pick), xh, inst.eps, inst.lambda);
        ++counts[pick];
        ++run.stats.whacks;
    }
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = static_cast<double>(counts[i]) / static_cast<double>(T);
    run.outcome = Outcome{OutcomeTag::CoveringDual, std::move(y)};
    return run;
}

// Mirrors the covering phases with thresholds eps/3 so that the returned
// x = xh / |xh| still meets Px <= 1+eps.
WhackRun solve_packing_fast(const PackingInstance& inst, const FastOptions& opt) {
    const auto& P = inst.P;
    const std::size_t n = P.cols(), m = P.rows();
    const double eps = inst.eps, lambda = inst.lambda;
    const std::int64_t T = rounds_for(n, lambda, eps);
    const double trigger = 1.0 + eps / 3.0, band = 1.0 - eps / 3.0;

    WhackRun run;
    WeightVector x(n);
    std::vector<std::int64_t> counts(m, 0);
    std::int64_t t = 0;
    for (;;) {
        x.resum();
        x.rebase(x.stored_sum());
        const double W = x.stored_sum();
        ++run.stats.phases;
        bool restart = false;
        for (std::size_t i = 0; i < m && !restart; ++i) {
            auto row = P.row(i);
            if (row_ratio(row, x.stored(), W) <= trigger) continue;
            std::int64_t delta = packing_step_size(row, x.stored(), W, eps, lambda, T - t);
            for (const auto& e : row)
                x.scale_entry(e.index, std::exp(static_cast<double>(delta) * std::log1p(-eps * e.value / lambda)));
            counts[i] += delta;
            t += delta;
            ++run.stats.enforcements;
            run.stats.whacks += delta;
            if (opt.record_trace) run.trace.push_back({i, delta});
            if (t >= T) {
                std::vector<double> y(m);
                for (std::size_t r = 0; r < m; ++r) y[r] = static_cast<double>(counts[r]) / static_cast<double>(T);
                run.outcome = Outcome{OutcomeTag::CoveringDual, std::move(y)};
                return run;
            }
            restart = x.stored_sum() < W * band;
        }
        if (!restart) break;
    }
    std::vector<double> out(x.stored().begin(), x.stored().end());
    double s = x.stored_sum();
    for (double& v : out) v /= s;
    run.outcome = Outcome{OutcomeTag::PackingPrimal, std::move(out)};
    return run;
}

}  // namespace mwu
