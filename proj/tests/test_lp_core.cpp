#include <doctest.h>

#include <cmath>

#include "mwu/instance.hpp"
#include "mwu/kernels.hpp"
#include "test_support.hpp"

using namespace mwu;
using mwu::testing::dense_col_products;
using mwu::testing::dense_row_products;

namespace {

bool has_issue(const std::vector<ValidationIssue>& v, ErrorKind k) {
    for (const auto& i : v)
        if (i.kind == k) return true;
    return false;
}

}  // namespace

TEST_CASE("validate accepts and rejects covering instances") {
    CHECK(validate(CoveringInstance{SparseNonnegMatrix::from_dense({{1.0}}), 1.0, 0.1}).empty());
    CHECK(has_issue(validate(CoveringInstance{SparseNonnegMatrix::from_dense({{2.0}}), 1.0, 0.1}),
                    ErrorKind::EntryAboveLambda));
    CHECK(has_issue(validate(CoveringInstance{SparseNonnegMatrix::from_dense({{1.0}}), 1.0, 0.6}),
                    ErrorKind::EpsOutOfRange));
}

TEST_CASE("apply_update mutates both indexes") {
    auto C = SparseNonnegMatrix::from_dense({{1.0}});
    apply_update(C, UpdateEvent{UpdateKind::RestrictCoveringEntry, 0, 0, 0.5});
    CHECK(C.at(0, 0) == 0.5);
    CHECK_THROWS_AS(apply_update(C, UpdateEvent{UpdateKind::RestrictCoveringEntry, 0, 0, 0.9}), Error);
    try {
        apply_update(C, UpdateEvent{UpdateKind::RestrictCoveringEntry, 0, 0, 0.9});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonMonotoneUpdate);
    }

    auto I = SparseNonnegMatrix::from_dense({{1, 0}, {0, 1}});
    apply_update(I, UpdateEvent{UpdateKind::RelaxCoveringEntry, 0, 1, 0.3});
    REQUIRE(I.row(0).size() == 2);
    bool in_col = false;
    for (const auto& e : I.col(1)) in_col |= e.index == 0 && e.value == 0.3;
    CHECK(in_col);
    CHECK_THROWS(apply_update(I, UpdateEvent{UpdateKind::RelaxCoveringEntry, 5, 0, 1.0}));
}

TEST_CASE("check_certificate on the small cases") {
    CoveringInstance one{SparseNonnegMatrix::from_dense({{1.0}}), 1.0, 0.1};
    CHECK(check_certificate(one, Outcome{OutcomeTag::CoveringPrimal, {1.0}}).ok);
    CoveringInstance small{SparseNonnegMatrix::from_dense({{0.4}}), 1.0, 0.1};
    CHECK(check_certificate(small, Outcome{OutcomeTag::PackingDual, {1.0}}).ok);
    auto bad = check_certificate(one, Outcome{OutcomeTag::CoveringPrimal, {0.5}});
    CHECK_FALSE(bad.ok);
    CHECK(bad.worst == 0);
}

TEST_CASE("property: row and column products agree with a dense multiply after updates") {
    gen::Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t m = 1 + rng.index(60), n = 1 + rng.index(60);
        auto C = gen::random_covering(rng, m, n, 1.0, 0.3, 0.1).C;
        for (const auto& ev : gen::restricting_stream(rng, C, 40)) apply_update(C, ev);
        std::vector<double> x(n), y(m);
        for (auto& v : x) v = rng.uniform();
        for (auto& v : y) v = rng.uniform();
        const auto rx = kernels::row_products(C, x);
        const auto dx = dense_row_products(C, x);
        const auto cy = kernels::col_products(C, y);
        const auto dy = dense_col_products(C, y);
        for (std::size_t i = 0; i < m; ++i) CHECK(std::abs(rx[i] - dx[i]) <= 1e-12);
        for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(cy[j] - dy[j]) <= 1e-12);
        // Row-wise and column-wise views of the same residual.
        double via_rows = 0.0, via_cols = 0.0;
        for (std::size_t i = 0; i < m; ++i) via_rows += y[i] * rx[i];
        for (std::size_t j = 0; j < n; ++j) via_cols += x[j] * cy[j];
        CHECK(std::abs(via_rows - via_cols) <= 1e-9 * (1.0 + std::abs(via_rows)));
    }
}

TEST_CASE("property: parallel kernels match the serial reference bit for bit") {
    gen::Rng rng(12);
    auto C = gen::random_covering(rng, 3000, 500, 1.0, 0.02, 0.1).C;
    std::vector<double> x(C.cols()), y(C.rows());
    for (auto& v : x) v = rng.uniform();
    for (auto& v : y) v = rng.uniform();
    CHECK(kernels::row_products_serial(C, x) == kernels::row_products_parallel(C, x));
    CHECK(kernels::col_products_serial(C, y) == kernels::col_products_parallel(C, y));
}
