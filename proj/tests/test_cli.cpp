#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mwu/cli_app.hpp"
#include "mwu/io.hpp"
#include "test_support.hpp"

using namespace mwu;

namespace {

struct CliResult {
    int code;
    nlohmann::json report;
};

CliResult cli(std::vector<std::string> args) {
    args.insert(args.begin(), "mwu-cli");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out);
    return {code, out.str().empty() ? nlohmann::json{} : nlohmann::json::parse(out.str())};
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    f << body;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("parse and emit round-trip") {
    gen::Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        auto c = gen::random_covering(rng, 1 + rng.index(9), 1 + rng.index(9), 2.0, 0.4, 0.1);
        std::istringstream in(emit(c));
        auto back = parse_instance(in);
        REQUIRE(back.kind == InstanceKind::Covering);
        CHECK(back.covering.C == c.C);
        CHECK(back.covering.lambda == c.lambda);

        auto p = gen::random_positive(rng, 3, 2, 4, 0.1, 10.0, 0.5, 1.0 / 200.0);
        std::istringstream pin(emit(p));
        auto pb = parse_instance(pin);
        REQUIRE(pb.kind == InstanceKind::Positive);
        CHECK(pb.positive.P == p.P);
        CHECK(pb.positive.C == p.C);
        CHECK(pb.positive.L == p.L);
        CHECK(pb.positive.U == p.U);

        auto g = gen::random_general(rng, 4, 3, 0.5, 2.0, 0.5);
        std::istringstream gin(emit(g));
        auto gb = parse_instance(gin);
        REQUIRE(gb.kind == InstanceKind::General);
        CHECK(gb.general.C == g.C);
        CHECK(gb.general.a == g.a);
        CHECK(gb.general.b == g.b);

        auto pk = gen::random_packing(rng, 3, 3, 1.0, 0.5, 0.1);
        std::istringstream kin(emit(pk));
        CHECK(parse_instance(kin).packing.P == pk.P);

        auto ups = gen::restricting_stream(rng, c.C, 10);
        std::istringstream uin(emit_updates(ups, UpdateDirection::Restricting));
        auto ub = parse_updates(uin, UpdateDirection::Restricting);
        REQUIRE(ub.size() == ups.size());
        for (std::size_t k = 0; k < ups.size(); ++k) {
            CHECK(ub[k].kind == ups[k].kind);
            CHECK(ub[k].new_value == ups[k].new_value);
        }
    }
}

TEST_CASE("parser rejects malformed input") {
    auto fails = [](const std::string& text) {
        std::istringstream in(text);
        try {
            parse_instance(in);
        } catch (const Error& e) {
            return e.kind() == ErrorKind::ParseError;
        }
        return false;
    };
    CHECK(fails(""));
    CHECK(fails("covering 1 1\n"));
    CHECK(fails("covering 1 1 1\nC 0 3 1\n"));
    CHECK(fails("covering 1 1 1\nC 0 0 -1\n"));
    CHECK(fails("matrix 1 1\n"));
    std::istringstream ok("# comment\n\ncovering 1 1 1  # trailing\nC 0 0 1\n");
    CHECK(parse_instance(ok).covering.C.at(0, 0) == 1.0);
    std::istringstream wrong_dir("set P 0 0 1\n");
    CHECK_THROWS_AS(parse_updates(wrong_dir, UpdateDirection::Restricting), Error);
}

TEST_CASE("generated streams are monotone and inside the bounds") {
    gen::Rng rng(102);
    auto c = gen::random_covering(rng, 10, 10, 1.0, 0.5, 0.1);
    SparseNonnegMatrix C = c.C;
    for (const auto& ev : gen::restricting_stream(rng, c.C, 200)) CHECK_NOTHROW(apply_update(C, ev));
    for (const auto& ev : gen::halving_stream(rng, c.C, 200)) CHECK_NOTHROW(apply_update(c.C, ev));
    auto p = gen::random_positive(rng, 5, 5, 5, 0.01, 100.0, 0.5, 1.0 / 200.0);
    for (const auto* M : {&p.P, &p.C})
        for (std::size_t i = 0; i < M->rows(); ++i)
            for (const auto& e : M->row(i)) {
                CHECK(e.value >= p.L);
                CHECK(e.value <= p.U);
            }
}

TEST_CASE("cli commands and exit codes") {
    write_file("cli_one.txt", "covering 1 1 1\nC 0 0 1\n");
    auto r = cli({"solve", "cli_one.txt", "--verify"});
    CHECK(r.code == kExitOk);
    CHECK(r.report["schema"] == 1);
    CHECK(r.report["outcome"] == "CoveringPrimal");
    CHECK(r.report["verify"]["certificate_ok"] == true);

    write_file("cli_two.txt", "covering 1 2 1\nC 0 0 1\nC 0 1 1\n");
    write_file("cli_bad_stream.txt", "set C 0 0 0.5\nset C 0 0 0.7\n");
    CHECK(cli({"dynamic", "cli_two.txt", "--updates", "cli_bad_stream.txt"}).code == kExitInput);

    write_file("cli_broken.txt", "covering 1 1\n");
    CHECK(cli({"solve", "cli_broken.txt"}).code == kExitInput);

    write_file("cli_general.txt", "general 2 2\na 0 1\na 1 1\nb 0 1\nb 1 1\nC 0 0 1\nC 0 1 2\nC 1 0 2\nC 1 1 1\n");
    auto g = cli({"general", "cli_general.txt", "--eps", "0.05", "--verify"});
    CHECK(g.code == kExitOk);
    CHECK(g.report["verify"]["opt"].get<double>() == doctest::Approx(2.0 / 3.0));
    CHECK(g.report["verify"]["opt_gap"].get<double>() <= 4.0 * 0.05);

    write_file("cli_pos.txt", "positive 1 1 1\nP 0 0 1\nC 0 0 0.4\n");
    write_file("cli_pos_up.txt", "set C 0 0 1.1\n");
    auto p = cli({"positive", "cli_pos.txt", "--verify"});
    CHECK(p.code == kExitOk);
    CHECK(p.report["outcome"] == "Infeasible");
    auto q = cli({"positive", "cli_pos.txt", "--updates", "cli_pos_up.txt", "--verify"});
    CHECK(q.code == kExitOk);
    CHECK(q.report["outcome"] == "PositiveSolution");
    CHECK(cli({"positive", "cli_pos.txt", "--eps", "0.1"}).code == kExitFailure);

    for (auto* f : {"cli_one.txt", "cli_two.txt", "cli_bad_stream.txt", "cli_broken.txt", "cli_general.txt",
                    "cli_pos.txt", "cli_pos_up.txt"})
        std::remove(f);
}

TEST_CASE("same seed gives byte-identical files") {
    for (int round = 0; round < 2; ++round) {
        const std::string tag = std::to_string(round);
        auto r = cli({"gen", "--kind", "positive", "--seed", "77", "--stream", "relaxing-translate", "--count", "30",
                      "--out", "gen_" + tag + ".txt", "--updates-out", "genu_" + tag + ".txt"});
        REQUIRE(r.code == kExitOk);
    }
    CHECK(read_file("gen_0.txt") == read_file("gen_1.txt"));
    CHECK(read_file("genu_0.txt") == read_file("genu_1.txt"));
    CHECK_FALSE(read_file("gen_0.txt").empty());
    for (auto* f : {"gen_0.txt", "gen_1.txt", "genu_0.txt", "genu_1.txt"}) std::remove(f);
}
