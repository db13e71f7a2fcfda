#include "mwu/generate.hpp"

#include <algorithm>
#include <cmath>

namespace mwu::gen {

Rng::Rng(std::uint64_t seed) : eng_(seed) {}

double Rng::uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Rng::index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

bool Rng::bernoulli(double p) { return uniform() < p; }

double Rng::log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

namespace {

// Value in (0, hi]: never zero so the entry is stored.
double positive_upto(Rng& rng, double hi) { return hi * (1.0 - rng.uniform()); }

SparseNonnegMatrix random_sparse(Rng& rng, std::size_t m, std::size_t n, double density, bool nonempty_rows,
                                 auto draw) {
    SparseNonnegMatrix M(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        bool any = false;
        for (std::size_t j = 0; j < n; ++j)
            if (rng.bernoulli(density)) {
                M.set(i, j, draw());
                any = true;
            }
        if (!any && nonempty_rows && n > 0) M.set(i, rng.index(n), draw());
    }
    return M;
}

}  // namespace

CoveringInstance random_covering(Rng& rng, std::size_t m, std::size_t n, double lambda, double density, double eps) {
    auto C = random_sparse(rng, m, n, density, true, [&] { return positive_upto(rng, lambda); });
    return CoveringInstance{std::move(C), lambda, eps};
}

PackingInstance random_packing(Rng& rng, std::size_t m, std::size_t n, double lambda, double density, double eps) {
    // Packing needs every column touched or the value is unbounded; fill empty columns.
    auto P = random_sparse(rng, m, n, density, true, [&] { return positive_upto(rng, lambda); });
    for (std::size_t j = 0; j < n && m > 0; ++j)
        if (P.col(j).empty()) P.set(rng.index(m), j, positive_upto(rng, lambda));
    return PackingInstance{std::move(P), lambda, eps};
}

PositiveInstance random_positive(Rng& rng, std::size_t mp, std::size_t mc, std::size_t n, double L, double U,
                                 double density, double eps) {
    auto draw = [&] { return rng.log_uniform(L, U); };
    auto P = random_sparse(rng, mp, n, density, false, draw);
    auto C = random_sparse(rng, mc, n, density, true, draw);
    return PositiveInstance{std::move(P), std::move(C), L, U, eps};
}

GeneralInstance random_general(Rng& rng, std::size_t m, std::size_t n, double L, double U, double density) {
    auto draw = [&] { return rng.uniform(L, U); };
    auto C = random_sparse(rng, m, n, density, true, draw);
    std::vector<double> a(n), b(m);
    for (auto& v : a) v = draw();
    for (auto& v : b) v = draw();
    return GeneralInstance{std::move(C), std::move(a), std::move(b), L, U};
}

std::vector<UpdateEvent> restricting_stream(Rng& rng, const SparseNonnegMatrix& C, std::size_t count) {
    SparseNonnegMatrix cur = C;
    std::vector<UpdateEvent> out;
    if (cur.nnz() == 0) return out;
    for (std::size_t t = 0; t < count; ++t) {
        std::size_t i = rng.index(cur.rows());
        auto row = cur.row(i);
        if (row.empty()) continue;
        const Entry e = row[rng.index(row.size())];
        // Drop the entry sometimes, but never the last one in its row.
        double v = row.size() > 1 && rng.bernoulli(0.1) ? 0.0 : e.value * rng.uniform(0.2, 0.95);
        out.push_back(UpdateEvent{UpdateKind::RestrictCoveringEntry, i, e.index, v});
        cur.set(i, e.index, v);
    }
    return out;
}

std::vector<UpdateEvent> halving_stream(Rng& rng, const SparseNonnegMatrix& C, std::size_t count) {
    SparseNonnegMatrix cur = C;
    std::vector<UpdateEvent> out;
    if (cur.nnz() == 0) return out;
    // Uniform point as the reference; the adversary attacks the row it covers best.
    std::vector<double> x(cur.cols(), 1.0 / static_cast<double>(std::max<std::size_t>(cur.cols(), 1)));
    for (std::size_t t = 0; t < count; ++t) {
        std::size_t best = 0;
        double best_dot = -1.0;
        for (std::size_t i = 0; i < cur.rows(); ++i) {
            double d = 0.0;
            for (const auto& e : cur.row(i)) d += e.value * x[e.index];
            if (d > best_dot) {
                best_dot = d;
                best = i;
            }
        }
        auto row = cur.row(best);
        if (row.empty()) break;
        const Entry e = *std::max_element(row.begin(), row.end(),
                                          [](const Entry& p, const Entry& q) { return p.value < q.value; });
        double v = e.value / 2.0;
        if (v < 1e-300) break;
        out.push_back(UpdateEvent{UpdateKind::RestrictCoveringEntry, best, e.index, v});
        cur.set(best, e.index, v);
        (void)rng;
    }
    return out;
}

std::vector<UpdateEvent> relaxing_stream(Rng& rng, const PositiveInstance& inst, std::size_t count, bool translations) {
    SparseNonnegMatrix P = inst.P, C = inst.C;
    std::vector<double> rhs_p(P.rows(), 1.0), rhs_c(C.rows(), 1.0);
    std::vector<UpdateEvent> out;
    for (std::size_t t = 0; t < count; ++t) {
        const int pick = static_cast<int>(rng.index(translations ? 4 : 2));
        if (pick == 0 && P.nnz() > 0) {
            std::size_t i = rng.index(P.rows());
            auto row = P.row(i);
            if (row.empty()) continue;
            const Entry e = row[rng.index(row.size())];
            double v = std::max(inst.L, e.value * rng.uniform(0.5, 0.99));
            if (!(v < e.value)) continue;
            out.push_back(UpdateEvent{UpdateKind::RelaxPackingEntry, i, e.index, v});
            P.set(i, e.index, v);
        } else if (pick == 1 && C.rows() > 0) {
            std::size_t j = rng.index(C.rows());
            std::size_t k = rng.index(C.cols());
            double old = C.at(j, k);
            double v = old > 0.0 ? std::min(inst.U, old * rng.uniform(1.01, 2.0)) : rng.log_uniform(inst.L, inst.U);
            if (!(v > old)) continue;
            out.push_back(UpdateEvent{UpdateKind::RelaxCoveringEntry, j, k, v});
            C.set(j, k, v);
        } else if (pick == 2 && P.rows() > 0) {
            std::size_t i = rng.index(P.rows());
            rhs_p[i] *= rng.uniform(1.001, 1.05);
            out.push_back(UpdateEvent{UpdateKind::TranslatePacking, i, 0, rhs_p[i]});
        } else if (pick == 3 && C.rows() > 0) {
            std::size_t j = rng.index(C.rows());
            rhs_c[j] *= rng.uniform(0.95, 0.999);
            out.push_back(UpdateEvent{UpdateKind::TranslateCovering, j, 0, rhs_c[j]});
        }
    }
    return out;
}

std::vector<UpdateEvent> general_restricting_stream(Rng& rng, const GeneralInstance& inst, std::size_t count) {
    SparseNonnegMatrix C = inst.C;
    std::vector<double> a = inst.a, b = inst.b;
    std::vector<UpdateEvent> out;
    for (std::size_t t = 0; t < count; ++t) {
        const int pick = static_cast<int>(rng.index(3));
        if (pick == 0 && C.nnz() > 0) {
            std::size_t i = rng.index(C.rows());
            auto row = C.row(i);
            if (row.size() < 2) continue;  // keep every row coverable
            const Entry e = row[rng.index(row.size())];
            double v = e.value * rng.uniform(0.5, 0.95);
            if (v < inst.L) v = 0.0;
            out.push_back(UpdateEvent{UpdateKind::RestrictCoveringEntry, i, e.index, v});
            C.set(i, e.index, v);
        } else if (pick == 1 && !a.empty()) {
            std::size_t j = rng.index(a.size());
            double v = std::min(inst.U, a[j] * rng.uniform(1.01, 1.3));
            if (!(v > a[j])) continue;
            a[j] = v;
            out.push_back(UpdateEvent{UpdateKind::TranslateObjective, 0, j, v});
        } else if (pick == 2 && !b.empty()) {
            std::size_t i = rng.index(b.size());
            double v = std::min(inst.U, b[i] * rng.uniform(1.01, 1.3));
            if (!(v > b[i])) continue;
            b[i] = v;
            out.push_back(UpdateEvent{UpdateKind::TranslateCovering, i, 0, v});
        }
    }
    return out;
}

}  // namespace mwu::gen
