#include <doctest.h>

#include <cmath>

#include "mwu/greedy.hpp"
#include "test_support.hpp"

using namespace mwu;

namespace {

PositiveInstance positive(std::vector<std::vector<double>> P, std::vector<std::vector<double>> C, double L, double U,
                          double eps = 1.0 / 200.0) {
    return PositiveInstance{SparseNonnegMatrix::from_dense(P), SparseNonnegMatrix::from_dense(C), L, U, eps};
}

bool contract_holds(const PositiveInstance& inst, const Outcome& out) {
    return check_certificate(inst, out).ok;
}

}  // namespace

TEST_CASE("soft potentials on tiny vectors") {
    const double eta = 7.0;
    CHECK(soft_max(std::vector<double>{0.0}, eta) == 0.0);
    CHECK(soft_max(std::vector<double>{1.0}, eta) == 1.0);
    CHECK(soft_max(std::vector<double>{1.0, 1.0}, eta) == doctest::Approx(1.0 + std::log(2.0) / eta));
    CHECK(soft_min(std::vector<double>{1.0, 1.0}, eta) == doctest::Approx(1.0 - std::log(2.0) / eta));
}

TEST_CASE("relative cost and cheapness at the origin") {
    GreedyPositiveSolver s(positive({{1.0}}, {{1.0}}, 1.0, 1.0));
    s.reset_point(std::vector<double>{0.0});
    CHECK(s.relative_cost(0) == doctest::Approx(1.0));
    CHECK(s.cheap(0));

    GreedyPositiveSolver t(positive({{1.0, 1.0}}, {{1.0, 0.0}}, 1.0, 1.0));
    CHECK_THROWS_AS(t.relative_cost(1), Error);
    CHECK_THROWS_AS(t.coordinate_cost(1), Error);
}

TEST_CASE("heap step on a single column matches the closed form") {
    GreedyPositiveSolver s(positive({{2.0}}, {{1.0}}, 1.0, 2.0, 0.1));
    s.reset_point(std::vector<double>{0.0});
    const double d1 = s.exact_delta(0);
    CHECK(d1 == doctest::Approx(0.1 / (2.0 * s.eta())));
    CHECK(s.heap_delta(0) >= d1 / 4.0);
    CHECK(s.heap_delta(0) <= d1 * (1 + 1e-12));
}

TEST_CASE("a satisfied point is returned as is") {
    GreedyPositiveSolver s(positive({{1.0}}, {{1.0}}, 1.0, 1.0));
    const auto boosts = s.stats().boosts;
    s.reset_point(std::vector<double>{1.0});
    CHECK(s.solved());
    CHECK(s.outcome().vec == std::vector<double>{1.0});
    CHECK(s.stats().boosts == boosts);
}

TEST_CASE("static runs on the one-by-one instances") {
    auto a = positive({{1.0}}, {{1.0}}, 1.0, 1.0);
    auto ra = solve_static_positive(a);
    REQUIRE(ra.tag == OutcomeTag::PositiveSolution);
    CHECK(contract_holds(a, ra));
    CHECK(ra.vec[0] == doctest::Approx(1.0).epsilon(0.05));
    CHECK(exact::positive_feasible_exact(a.P, a.C, 0.0).feasible);

    auto b = positive({{1.0}}, {{2.0}}, 1.0, 2.0);
    auto rb = solve_static_positive(b);
    REQUIRE(rb.tag == OutcomeTag::PositiveSolution);
    CHECK(contract_holds(b, rb));
    CHECK(rb.vec[0] == doctest::Approx(0.5).epsilon(0.05));

    auto c = positive({{1.0}}, {{0.4}}, 0.4, 1.0);
    CHECK(solve_static_positive(c).tag == OutcomeTag::Infeasible);
    CHECK_FALSE(exact::positive_feasible_exact(c.P, c.C, 200.0 / 200.0).feasible);
}

TEST_CASE("relaxing the covering entry revives the run") {
    GreedyPositiveSolver s(positive({{1.0}}, {{0.4}}, 0.4, 1.1));
    REQUIRE_FALSE(s.solved());
    auto out = s.handle_update(UpdateEvent{UpdateKind::RelaxCoveringEntry, 0, 0, 1.1});
    REQUIRE(out.tag == OutcomeTag::PositiveSolution);
    auto now = positive({{1.0}}, {{1.1}}, 0.4, 1.1);
    CHECK(contract_holds(now, out));
    CHECK(exact::positive_feasible_exact(now.P, now.C, 0.0).feasible);
    CHECK_THROWS_AS(s.handle_update(UpdateEvent{UpdateKind::RelaxCoveringEntry, 0, 0, 1.0}), Error);
}

TEST_CASE("shrinking a packing entry on an unused coordinate leaves the weights alone") {
    GreedyPositiveSolver s(positive({{1.0, 1.0}}, {{0.3, 0.0}}, 0.3, 1.0));
    REQUIRE(s.point()[1] == 0.0);
    const std::vector<double> before(s.packing_dots().begin(), s.packing_dots().end());
    s.handle_update(UpdateEvent{UpdateKind::RelaxPackingEntry, 0, 1, 0.5});
    CHECK(std::vector<double>(s.packing_dots().begin(), s.packing_dots().end()) == before);
}

TEST_CASE("packing translations apply once the factor reaches 1 + eps") {
    GreedyPositiveSolver s(positive({{1.0, 0.5}}, {{0.2, 0.2}}, 0.2, 1.0, 0.1));
    s.handle_update(UpdateEvent{UpdateKind::TranslatePacking, 0, 0, 1.05});
    CHECK(s.stats().translations_filtered == 1);
    CHECK(s.packing().at(0, 0) == 1.0);
    s.handle_update(UpdateEvent{UpdateKind::TranslatePacking, 0, 0, 1.21});
    CHECK(s.stats().translations_applied == 1);
    CHECK(s.packing().at(0, 0) == doctest::Approx(1.0 / 1.21));
    CHECK(s.packing().at(0, 1) == doctest::Approx(0.5 / 1.21));
}

TEST_CASE("dual extraction") {
    auto enc = positive_encoding(SparseNonnegMatrix::from_dense({{1, 0}, {0, 1}}));
    GreedyPositiveSolver s(enc);
    REQUIRE_FALSE(s.solved());
    const auto y = s.extract_packing_dual();
    CHECK(mwu::testing::sum(y) == doctest::Approx(1.0));
    CHECK(check_certificate(enc.C, Outcome{OutcomeTag::PackingDual, y}, CertificateSlack::extracted_dual(enc.eps)).ok);
    s.reset_point(std::vector<double>{0.0, 0.0});
    const auto u = s.extract_packing_dual();
    CHECK(u[0] == doctest::Approx(0.5));
    CHECK(u[1] == doctest::Approx(0.5));

    GreedyPositiveSolver ok(positive({{1.0}}, {{1.0}}, 1.0, 1.0));
    CHECK_THROWS_AS(ok.extract_packing_dual(), Error);
}

TEST_CASE("property: gradient ratio matches finite differences") {
    gen::Rng rng(81);
    for (int trial = 0; trial < 30; ++trial) {
        auto inst = gen::random_positive(rng, 2, 2, 2, 0.5, 2.0, 1.0, 1.0 / 200.0);
        GreedyPositiveSolver s(inst);
        std::vector<double> x{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
        s.reset_point(x);
        const double eta = s.eta(), h = 1e-6;
        auto fp = [&](std::vector<double> z) { return soft_max(mwu::testing::dense_row_products(inst.P, z), eta); };
        auto fc = [&](std::vector<double> z) { return soft_min(mwu::testing::dense_row_products(inst.C, z), eta); };
        for (std::size_t k = 0; k < 2; ++k) {
            auto up = x, dn = x;
            up[k] += h;
            dn[k] -= h;
            const double ratio = (fp(up) - fp(dn)) / (fc(up) - fc(dn));
            CHECK(std::abs(s.relative_cost(k) - ratio) <= 1e-5 * std::abs(ratio));
        }
    }
}

TEST_CASE("property: static verdicts against the exact oracle") {
    gen::Rng rng(82);
    for (int trial = 0; trial < 40; ++trial) {
        auto inst = gen::random_positive(rng, 1 + rng.index(4), 1 + rng.index(4), 1 + rng.index(3), 0.25, 4.0, 0.7,
                                         1.0 / 200.0);
        GreedyPositiveSolver s(inst, GreedyOptions{true});
        CHECK(s.audit().failures == 0);
        CHECK(static_cast<double>(s.stats().phases) <= s.phase_budget());
        if (s.solved()) {
            CHECK(contract_holds(inst, s.outcome()));
        } else {
            CHECK_FALSE(exact::positive_feasible_exact(inst.P, inst.C, 2.0 * inst.eps).feasible);
        }
    }
}

TEST_CASE("property: audited relaxing streams") {
    gen::Rng rng(83);
    for (int trial = 0; trial < 12; ++trial) {
        auto inst = gen::random_positive(rng, 1 + rng.index(4), 1 + rng.index(4), 1 + rng.index(3), 0.25, 4.0, 0.7, 0.02);
        GreedyPositiveSolver s(inst, GreedyOptions{true});
        for (const auto& ev : gen::relaxing_stream(rng, inst, 40, true)) s.handle_update(ev);
        CHECK_MESSAGE(s.audit().failures == 0, s.audit().first_failure);
        if (s.audit().delta_checks > 0) {
            CHECK(s.audit().worst_delta_low >= 0.25 - 1e-12);
            CHECK(s.audit().worst_delta_high <= 1.0 + 1e-12);
        }
        for (auto b : s.stats().boosts_per_coordinate) CHECK(static_cast<double>(b) <= s.boost_budget());
    }
}
