#include <cmath>

#include "mwu/kernels.hpp"
#include "mwu/whack.hpp"

namespace mwu {

RowSelector scripted_selector(std::vector<std::size_t> rows) {
    return [rows = std::move(rows)](std::span<const double>, std::int64_t t) -> std::optional<std::size_t> {
        if (t < static_cast<std::int64_t>(rows.size())) return rows[static_cast<std::size_t>(t)];
        return std::nullopt;
    };
}

std::vector<std::size_t> expand_trace(std::span<const WhackStep> steps) {
    std::vector<std::size_t> out;
    for (const auto& s : steps) out.insert(out.end(), static_cast<std::size_t>(s.delta), s.row);
    return out;
}

WhackRun solve_basic(const CoveringInstance& inst, const RowSelector& select) {
    const auto& C = inst.C;
    const double eps = inst.eps, lambda = inst.lambda;
    const std::size_t n = C.cols(), m = C.rows();
    const std::int64_t T = rounds_for(n, lambda, eps);
    constexpr double kTol = 1e-9;

    WhackRun run;
    std::vector<double> xh(n, 1.0);
    double log_scale = 0.0;
    std::vector<std::int64_t> counts(m, 0);
    run.stats.max_log_weight = std::log(static_cast<double>(n));

    for (std::int64_t t = 0; t < T; ++t) {
        double s = 0.0;
        for (double v : xh) s += v;
        run.stats.max_log_weight = std::max(run.stats.max_log_weight, std::log(s) + log_scale);
        // Keep the stored weights near 1; only ratios matter below.
        for (double& v : xh) v /= s;
        log_scale += std::log(s);
        auto cx = kernels::row_products(C, xh);

        std::optional<std::size_t> pick;
        if (select) {
            pick = select(cx, t);
            if (pick && (*pick >= m || cx[*pick] >= 1.0 + kTol))
                throw Error(ErrorKind::InvalidSelection, "selected row is not violated");
        } else {
            for (std::size_t i = 0; i < m && !pick; ++i)
                if (cx[i] < 1.0 - eps) pick = i;
        }
        if (!pick) {
            for (std::size_t i = 0; i < m; ++i)
                if (cx[i] < 1.0 - eps - kTol)
                    throw Error(ErrorKind::InvalidSelection, "termination requested while a row is below 1-eps");
            run.outcome = Outcome{OutcomeTag::CoveringPrimal, xh};
            return run;
        }
        whack(C.row(*pick), xh, eps, lambda);
        ++counts[*pick];
        ++run.stats.whacks;
        if (!run.trace.empty() && run.trace.back().row == *pick) ++run.trace.back().delta;
        else run.trace.push_back({*pick, 1});
    }
    double s = 0.0;
    for (double v : xh) s += v;
    run.stats.max_log_weight = std::max(run.stats.max_log_weight, std::log(s) + log_scale);
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = static_cast<double>(counts[i]) / static_cast<double>(T);
    run.outcome = Outcome{OutcomeTag::PackingDual, std::move(y)};
    return run;
}

WhackRun solve_fast(const CoveringInstance& inst, const FastOptions& opt) {
    const auto& C = inst.C;
    const std::size_t m = C.rows();
    WhackEngine eng(C.cols(), inst.lambda, inst.eps, rounds_for(C.cols(), inst.lambda, inst.eps), true);
    eng.ensure_rows(m);
    WhackRun run;
    if (opt.record_trace) eng.trace = &run.trace;

    for (;;) {
        eng.start_phase();
        bool restart = false;
        for (std::size_t i = 0; i < m && !restart; ++i) {
            auto row = C.row(i);
            if (!eng.violated(row)) continue;
            eng.enforce(i, row);
            if (eng.exhausted()) {
                run.outcome = Outcome{OutcomeTag::PackingDual, eng.dual()};
                run.stats = eng.stats();
                return run;
            }
            restart = eng.weight_jumped();
        }
        if (!restart) break;
    }
    run.outcome = Outcome{OutcomeTag::CoveringPrimal, eng.normalized()};
    run.stats = eng.stats();
    return run;
}

}  // namespace mwu
