#include <doctest.h>

#include <cmath>

#include "mwu/whack.hpp"
#include "mwu/whack_online.hpp"
#include "test_support.hpp"

using namespace mwu;

TEST_CASE("first row on two coordinates takes eight whacks") {
    OnlineWhackSolver s(2, 1.0, 0.1);
    CHECK(s.recourse_total() == 0);
    const std::vector<Entry> row{{0, 1.0}};
    CHECK(s.insert_row(row) == OnlineStatus::Maintained);
    // The first enforcement takes eight whacks; each later phase re-enforces the row.
    CHECK(s.engine().counts()[0] >= 8);
    CHECK(s.engine().t() == s.engine().counts()[0]);
    CHECK(s.engine().ratio(s.rows_seen().row(0)) >= 1.0 - 0.1 / 2.0);
}

TEST_CASE("the first enforcement on two coordinates is eight whacks") {
    WhackEngine eng(2, 1.0, 0.1, rounds_for(2, 1.0, 0.1), true);
    eng.ensure_rows(1);
    eng.start_phase();
    const std::vector<Entry> row{{0, 1.0}};
    CHECK(eng.enforce(0, row) == 8);
}

TEST_CASE("a covered row costs nothing") {
    OnlineWhackSolver s(2, 1.0, 0.1);
    const std::vector<Entry> row{{0, 1.0}, {1, 1.0}};
    s.insert_row(row);
    CHECK(s.recourse_total() == 0);
    CHECK(s.engine().stats().whacks == 0);
}

TEST_CASE("each phase boundary on three coordinates costs three") {
    OnlineWhackSolver s(3, 1.0, 0.1);
    const std::vector<Entry> row{{0, 1.0}};
    s.insert_row(row);
    REQUIRE(s.phase_transitions() >= 1);
    CHECK(s.recourse_total() == 3 * s.phase_transitions());
}

TEST_CASE("property: shrinking supports terminate with a valid dual") {
    gen::Rng rng(51);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 4;
        const double eps = rng.bernoulli(0.5) ? 0.1 : 0.2;
        OnlineWhackSolver s(n, 1.0, eps);
        std::vector<double> before;
        for (int r = 0; r < 4000 && !s.terminated(); ++r) {
            std::vector<Entry> row;
            const std::size_t width = 1 + rng.index(n);
            for (std::size_t j = 0; j < width; ++j) row.push_back({j, rng.uniform(0.01, 0.3)});
            const auto phases_before = s.phase_transitions();
            const auto x_before = s.current_x();
            s.insert_row(row);
            if (s.terminated()) break;
            const auto x = s.current_x();
            if (s.phase_transitions() == phases_before)
                for (std::size_t j = 0; j < n; ++j) CHECK(x[j] >= x_before[j]);
            // Every row seen so far stays (1 - eps)-covered.
            const auto& seen = s.rows_seen();
            for (std::size_t i = 0; i < seen.rows(); ++i) {
                double d = 0.0;
                for (const auto& e : seen.row(i)) d += e.value * x[e.index];
                CHECK(d >= 1.0 - eps - 1e-9);
            }
            CHECK(mwu::testing::sum(x) <= 1.0 / (1.0 - eps / 2.0) + 1e-9);
        }
        REQUIRE(s.terminated());
        CHECK(s.current().tag == OutcomeTag::PackingDual);
        CHECK(check_certificate(s.rows_seen(), s.current(), CertificateSlack::static_template(eps)).ok);
        CHECK(s.recourse_total() == static_cast<std::int64_t>(n) * s.phase_transitions());
        CHECK(s.recourse_total() <= static_cast<std::int64_t>(n) * phase_cap(n, eps));
        CHECK_THROWS_AS(s.insert_row(std::vector<Entry>{{0, 1.0}}), Error);
    }
}
