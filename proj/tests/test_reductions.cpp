#include <doctest.h>

#include <cmath>

#include "mwu/reductions.hpp"
#include "test_support.hpp"

using namespace mwu;

namespace {

constexpr double kGap = 4.0;  // c in the (1 +- c eps) optimality window

double exact_opt(const GeneralInstance& g) {
    auto r = exact::solve_covering_exact(g.C, g.a, g.b);
    REQUIRE(r.status == exact::LpStatus::Optimal);
    return r.value_d();
}

bool in_window(double value, double opt, double eps) {
    return value >= opt * (1.0 - kGap * eps) - 1e-12 && value <= opt * (1.0 + kGap * eps) / (1.0 - kGap * eps) + 1e-12;
}

double min_cover_ratio(const GeneralInstance& g, const std::vector<double>& x) {
    double worst = INFINITY;
    for (std::size_t i = 0; i < g.C.rows(); ++i) {
        double d = 0.0;
        for (const auto& e : g.C.row(i)) d += e.value * x[e.index];
        worst = std::min(worst, d / g.b[i]);
    }
    return worst;
}

}  // namespace

TEST_CASE("normalization divides by objective and right-hand side") {
    GeneralInstance g{SparseNonnegMatrix::from_dense({{2.0}}), {4.0}, {8.0}, 1.0, 8.0};
    CHECK(normalize(g).at(0, 0) == 0.0625);
    GeneralInstance id{SparseNonnegMatrix::from_dense({{1.0, 2.0}, {0.5, 0.0}}), {1.0, 1.0}, {1.0, 1.0}, 0.5, 2.0};
    CHECK(normalize(id) == id.C);
}

TEST_CASE("property: normalized entries and optimum") {
    gen::Rng rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        const double L = 0.5, U = 2.0;
        auto g = gen::random_general(rng, 1 + rng.index(6), 1 + rng.index(6), L, U, 0.6);
        auto Cn = normalize(g);
        for (std::size_t i = 0; i < Cn.rows(); ++i)
            for (const auto& e : Cn.row(i)) {
                CHECK(e.value >= L / (U * U) * (1 - 1e-12));
                CHECK(e.value <= U / (L * L) * (1 + 1e-12));
            }
        const double opt = exact_opt(g);
        GeneralInstance unit{Cn, mwu::testing::ones(Cn.cols()), mwu::testing::ones(Cn.rows()), L, U};
        CHECK(std::abs(exact_opt(unit) - opt) <= 1e-9 * opt);
        // Some guess lands within a (1 + eps) factor of the optimum.
        const double eps = 0.1;
        bool bracketed = false;
        for (double mu : guess_grid(Cn.cols(), L, U, eps)) bracketed |= mu >= opt / (1 + eps) && mu <= opt * (1 + eps);
        CHECK(bracketed);
    }
}

TEST_CASE("guess grid endpoints and ratio") {
    auto one = guess_grid(1, 1.0, 1.0, 0.1);
    CHECK(one == std::vector<double>{1.0});
    auto four = guess_grid(4, 1.0, 1.0, 0.1);
    CHECK(four.size() == 16);
    CHECK(four.back() == doctest::Approx(std::pow(1.1, 15)).epsilon(1e-12));
    CHECK(four.back() >= 4.0);
    for (std::size_t k = 1; k < four.size(); ++k) CHECK(four[k] / four[k - 1] == doctest::Approx(1.1).epsilon(1e-12));
}

TEST_CASE("static general solves on the reference instances") {
    const double eps = 0.05;
    GeneralInstance two{SparseNonnegMatrix::from_dense({{1, 2}, {2, 1}}), {1, 1}, {1, 1}, 1.0, 2.0};
    auto s = solve_general_static(two, eps);
    CHECK(exact_opt(two) == doctest::Approx(2.0 / 3.0));
    CHECK(s.objective >= 2.0 / 3.0 * (1 - kGap * eps));
    CHECK(s.objective <= 2.0 / 3.0 * (1 + kGap * eps));

    GeneralInstance one{SparseNonnegMatrix::from_dense({{1.0}}), {1.0}, {1.0}, 1.0, 1.0};
    auto u = solve_general_static(one, eps);
    CHECK(u.objective == doctest::Approx(1.0).epsilon(kGap * eps));

    GeneralInstance diag{SparseNonnegMatrix::from_dense({{2, 0}, {0, 4}}), {1, 1}, {1, 1}, 1.0, 4.0};
    auto d = solve_general_static(diag, eps);
    CHECK(exact_opt(diag) == doctest::Approx(0.75));
    CHECK(in_window(d.objective, 0.75, eps));
}

TEST_CASE("property: static general objective and dual against the exact optimum") {
    gen::Rng rng(72);
    const double eps = 0.05;
    for (int trial = 0; trial < 40; ++trial) {
        auto g = gen::random_general(rng, 1 + rng.index(8), 1 + rng.index(8), 0.5, 2.0, 0.5);
        auto s = solve_general_static(g, eps);
        const double opt = exact_opt(g);
        CHECK(in_window(s.objective, opt, eps));
        CHECK(min_cover_ratio(g, s.x) >= 1.0 - eps - 1e-9);
        if (!s.y.empty()) {
            // C^T y <= a makes b^T y a lower bound.
            auto cty = mwu::testing::dense_col_products(g.C, s.y);
            for (std::size_t j = 0; j < cty.size(); ++j) CHECK(cty[j] <= g.a[j] * (1 + 1e-9));
            CHECK(s.dual_objective <= opt * (1 + 1e-9));
        }
    }
}

TEST_CASE("dynamic translations below the threshold are filtered") {
    GeneralInstance g{SparseNonnegMatrix::from_dense({{1, 0.5}, {0.5, 1}}), {1, 1}, {1, 1}, 0.5, 2.0};
    GeneralDynamicSolver s(g, 0.1);
    s.handle_update(UpdateEvent{UpdateKind::TranslateCovering, 1, 0, 1.05});
    CHECK(s.filtered_translations() == 1);
    CHECK(s.expanded_entry_updates() == 0);
    s.handle_update(UpdateEvent{UpdateKind::TranslateCovering, 1, 0, 1.2});
    CHECK(s.filtered_translations() == 1);
    CHECK(s.expanded_entry_updates() > 0);
    CHECK(s.expanded_entry_updates() <= static_cast<std::int64_t>(2 * s.guess_count()));
    CHECK_THROWS_AS(s.handle_update(UpdateEvent{UpdateKind::TranslateCovering, 1, 0, 1.1}), Error);
}

TEST_CASE("property: dynamic general objective tracks the exact optimum") {
    gen::Rng rng(73);
    const double eps = 0.05;
    for (int trial = 0; trial < 6; ++trial) {
        auto g = gen::random_general(rng, 5, 5, 0.5, 2.0, 0.6);
        GeneralDynamicSolver s(g, eps);
        for (const auto& ev : gen::general_restricting_stream(rng, g, 25)) {
            s.handle_update(ev);
            const auto& now = s.instance();
            auto sol = s.current();
            REQUIRE_FALSE(sol.x.empty());
            CHECK(min_cover_ratio(now, sol.x) >= 1.0 - 2.0 * eps);
            CHECK(in_window(sol.objective, exact_opt(now), eps));
        }
    }
}

TEST_CASE("stream and online reductions stay within their counters") {
    GeneralInstance single{SparseNonnegMatrix::from_dense({{1.0}}), {1.0}, {1.0}, 1.0, 1.0};
    auto run = solve_general_stream(single, 0.1, StreamMode::FullDual);
    MatrixRowStream src(single.C);
    auto alone = solve_stream(src, 1, 1.0, 0.1, StreamMode::FullDual);
    CHECK(run.passes_interleaved == alone.passes);

    gen::Rng rng(74);
    for (int trial = 0; trial < 10; ++trial) {
        const double eps = 0.1;
        auto g = gen::random_general(rng, 1 + rng.index(8), 2, 0.5, 2.0, 0.7);
        auto r = solve_general_stream(g, eps, StreamMode::FullDual);
        const auto guesses = static_cast<std::int64_t>(guess_grid(2, 0.5, 2.0, eps).size());
        CHECK(r.max_guess_passes <= phase_cap(2, eps));
        CHECK(r.passes_interleaved <= phase_cap(2, eps));
        CHECK(r.passes_sequential <= guesses * phase_cap(2, eps));
        CHECK(min_cover_ratio(g, r.solution.x) >= 1.0 - eps - 1e-9);

        GeneralOnlineSolver online(g.a, g.L, g.U, eps);
        for (std::size_t i = 0; i < g.C.rows(); ++i) {
            online.insert_row(g.C.row(i), g.b[i]);
            CHECK(online.recourse_total() <= online.phase_bound_total());
        }
        auto sol = online.current();
        REQUIRE_FALSE(sol.x.empty());
        CHECK(min_cover_ratio(g, sol.x) >= 1.0 - eps - 1e-9);
    }
}
