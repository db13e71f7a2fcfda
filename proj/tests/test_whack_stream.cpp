#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "mwu/io.hpp"
#include "mwu/whack.hpp"
#include "mwu/whack_stream.hpp"
#include "test_support.hpp"

using namespace mwu;

TEST_CASE("single-row streams") {
    auto one = SparseNonnegMatrix::from_dense({{1.0}});
    MatrixRowStream s1(one);
    StreamSolver a(1, 1.0, 0.1, StreamMode::FullDual);
    CHECK(a.run_pass(s1) == PassResult::PassComplete);
    REQUIRE(a.finished());
    CHECK(a.outcome()->tag == OutcomeTag::CoveringPrimal);
    CHECK(a.outcome()->vec == std::vector<double>{1.0});

    auto small = SparseNonnegMatrix::from_dense({{0.4}});
    MatrixRowStream s2(small);
    auto primal = solve_stream(s2, 1, 1.0, 0.1, StreamMode::PrimalOnly);
    CHECK(primal.outcome.tag == OutcomeTag::Null);
    MatrixRowStream s3(small);
    auto full = solve_stream(s3, 1, 1.0, 0.1, StreamMode::FullDual);
    CHECK(full.outcome.tag == OutcomeTag::PackingDual);
    CHECK(full.outcome.vec[0] == doctest::Approx(1.0));

    auto flat = SparseNonnegMatrix::from_dense({{1.0, 1.0}});
    MatrixRowStream s4(flat);
    auto f = solve_stream(s4, 2, 1.0, 0.1, StreamMode::FullDual);
    CHECK(f.passes == 1);
    CHECK(f.outcome.tag == OutcomeTag::CoveringPrimal);
}

TEST_CASE("property: streaming agrees with the static fast run") {
    gen::Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t m = 1 + rng.index(50), n = 1 + rng.index(50);
        const double eps = rng.bernoulli(0.5) ? 0.1 : 0.2;
        auto inst = gen::random_covering(rng, m, n, 1.0, rng.uniform(0.05, 0.5), eps);
        auto fast = solve_fast(inst);
        MatrixRowStream src(inst.C);
        auto run = solve_stream(src, n, 1.0, eps, StreamMode::FullDual);
        CHECK(run.outcome.tag == fast.outcome.tag);
        CHECK(run.passes == run.phases);
        CHECK(run.phases == fast.stats.phases);
        CHECK(run.passes <= phase_cap(n, eps));
        CHECK(run.peak_live_words <= n + m + 6);
        MatrixRowStream src2(inst.C);
        auto lean = solve_stream(src2, n, 1.0, eps, StreamMode::PrimalOnly);
        CHECK(lean.peak_live_words <= n + 6);
        CHECK(lean.passes == run.passes);
    }
}

TEST_CASE("file streams re-read the instance each pass") {
    gen::Rng rng(42);
    auto inst = gen::random_covering(rng, 30, 20, 1.0, 0.2, 0.1);
    const std::string path = "stream_instance.txt";
    {
        std::ofstream f(path);
        f << emit(inst);
    }
    FileRowStream file(path);
    auto from_file = solve_stream(file, 20, 1.0, 0.1, StreamMode::FullDual);
    MatrixRowStream mem(inst.C);
    auto from_mem = solve_stream(mem, 20, 1.0, 0.1, StreamMode::FullDual);
    CHECK(from_file.outcome.tag == from_mem.outcome.tag);
    CHECK(from_file.passes == from_mem.passes);
    std::remove(path.c_str());
}

TEST_CASE("random 50x50 sparse instance stays within the pass cap") {
    gen::Rng rng(43);
    auto inst = gen::random_covering(rng, 50, 50, 1.0, 0.05, 0.2);
    MatrixRowStream src(inst.C);
    auto run = solve_stream(src, 50, 1.0, 0.2, StreamMode::FullDual);
    CHECK(run.passes <= phase_cap(50, 0.2));
}
