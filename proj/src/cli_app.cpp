#include "mwu/cli_app.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "mwu/exact.hpp"
#include "mwu/generate.hpp"
#include "mwu/greedy.hpp"
#include "mwu/io.hpp"
#include "mwu/reductions.hpp"
#include "mwu/whack.hpp"
#include "mwu/whack_dynamic.hpp"
#include "mwu/whack_online.hpp"
#include "mwu/whack_packing.hpp"
#include "mwu/whack_stream.hpp"

namespace mwu {

using json = nlohmann::ordered_json;

std::string vector_digest(std::span<const double> v) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (double d : v) {
        auto bits = std::bit_cast<std::uint64_t>(d);
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

struct Config {
    std::string input;
    std::string updates;
    std::string report;
    std::string mode;
    std::string setting = "static";
    double eps = 0.1;
    bool eps_set = false;
    bool verify = false;
    std::uint64_t seed = 1;
    // gen
    std::string kind = "covering";
    std::string stream = "none";
    std::string out_path;
    std::string updates_out;
    std::size_t m = 8, n = 8, mp = 4, mc = 4, count = 0;
    double density = 0.5, lambda = 1.0, L = 0.5, U = 2.0;
};

// Raised when --verify finds a broken certificate.
struct VerifyFailure {
    std::string what;
};

json stats_json(const WhackStats& s) {
    return json{{"phases", s.phases}, {"enforcements", s.enforcements}, {"whacks", s.whacks}};
}

json outcome_json(const Outcome& o) {
    return json{{"outcome", to_string(o.tag)}, {"digest", vector_digest(o.vec)}, {"size", o.vec.size()}};
}

json cert_json(const CertificateReport& r) {
    json j{{"certificate_ok", r.ok}};
    if (!r.ok) j["violation"] = {{"what", r.what}, {"index", r.worst}, {"value", r.residual}};
    return j;
}

void require(const CertificateReport& r) {
    if (!r.ok) throw VerifyFailure{r.what};
}

ParsedInstance load(const Config& c, InstanceKind want, const char* name) {
    ParsedInstance p = parse_instance_file(c.input);
    if (p.kind != want) throw Error(ErrorKind::ParseError, std::string("expected a ") + name + " instance");
    return p;
}

void check_issues(const std::vector<ValidationIssue>& issues) {
    if (!issues.empty()) throw Error(issues.front().kind, issues.front().detail);
}

json cmd_solve(const Config& c) {
    auto inst = load(c, InstanceKind::Covering, "covering").covering;
    inst.eps = c.eps;
    check_issues(validate(inst));
    WhackRun run = c.mode == "basic" ? solve_basic(inst) : solve_fast(inst);
    json j = outcome_json(run.outcome);
    j["stats"] = stats_json(run.stats);
    if (c.verify) {
        auto r = check_certificate(inst, run.outcome);
        j["verify"] = cert_json(r);
        require(r);
    }
    return j;
}

json cmd_packing(const Config& c) {
    auto inst = load(c, InstanceKind::Packing, "packing").packing;
    inst.eps = c.eps;
    check_issues(validate(inst));
    WhackRun run = c.mode == "basic" ? solve_packing_basic(inst) : solve_packing_fast(inst);
    json j = outcome_json(run.outcome);
    j["stats"] = stats_json(run.stats);
    if (c.verify) {
        auto r = check_certificate(inst, run.outcome);
        j["verify"] = cert_json(r);
        require(r);
    }
    return j;
}

json cmd_positive(const Config& c) {
    auto inst = load(c, InstanceKind::Positive, "positive").positive;
    inst.eps = c.eps_set ? c.eps : 1.0 / 200.0;
    if (!(inst.eps > 0.0 && inst.eps <= 1.0 / 200.0))
        throw Error(ErrorKind::EpsOutOfRange, "the greedy solver needs 0 < eps <= 1/200");
    check_issues(validate(inst));
    GreedyPositiveSolver solver(inst);
    std::int64_t events = 0;
    if (!c.updates.empty())
        for (const auto& ev : parse_updates_file(c.updates, UpdateDirection::Relaxing)) {
            solver.handle_update(ev);
            ++events;
        }
    const Outcome out = solver.outcome();
    json j = outcome_json(out);
    const auto& s = solver.stats();
    j["stats"] = {{"boosts", s.boosts},
                  {"phases", s.phases},
                  {"heap_readjusts", s.heap_readjusts},
                  {"pseudo_updates", s.pseudo_updates},
                  {"events", events},
                  {"translations_applied", s.translations_applied},
                  {"translations_filtered", s.translations_filtered}};
    if (c.verify) {
        // Check against the data after every update was applied.
        PositiveInstance now = inst;
        if (!c.updates.empty()) {
            std::vector<double> rhs_p(now.P.rows(), 1.0), rhs_c(now.C.rows(), 1.0);
            for (const auto& ev : parse_updates_file(c.updates, UpdateDirection::Relaxing)) {
                if (ev.kind == UpdateKind::RelaxPackingEntry) now.P.set(ev.row, ev.col, ev.new_value);
                else if (ev.kind == UpdateKind::RelaxCoveringEntry) now.C.set(ev.row, ev.col, ev.new_value);
                else if (ev.kind == UpdateKind::TranslatePacking) rhs_p[ev.row] = ev.new_value;
                else if (ev.kind == UpdateKind::TranslateCovering) rhs_c[ev.row] = ev.new_value;
            }
            SparseNonnegMatrix P(now.P.rows(), now.P.cols()), C(now.C.rows(), now.C.cols());
            for (std::size_t i = 0; i < P.rows(); ++i)
                for (const auto& e : now.P.row(i)) P.set(i, e.index, e.value / rhs_p[i]);
            for (std::size_t i = 0; i < C.rows(); ++i)
                for (const auto& e : now.C.row(i)) C.set(i, e.index, e.value / rhs_c[i]);
            now.P = std::move(P);
            now.C = std::move(C);
        }
        json v;
        if (out.tag == OutcomeTag::PositiveSolution) {
            auto r = check_certificate(now, out);
            v = cert_json(r);
            j["verify"] = v;
            require(r);
        } else {
            v["certificate_ok"] = true;
            if (now.P.cols() <= exact::kMaxDim && now.P.rows() <= exact::kMaxDim && now.C.rows() <= exact::kMaxDim) {
                const bool feasible = exact::positive_feasible_exact(now.P, now.C, 0.0).feasible;
                v["exact_feasible"] = feasible;
                v["certificate_ok"] = !feasible;
                j["verify"] = v;
                if (feasible) throw VerifyFailure{"Infeasible verdict on a feasible instance"};
            }
            j["verify"] = v;
        }
    }
    return j;
}

json cmd_dynamic(const Config& c) {
    auto inst = load(c, InstanceKind::Covering, "covering").covering;
    inst.eps = c.eps;
    check_issues(validate(inst));
    DynamicWhackSolver solver(inst);
    std::vector<UpdateEvent> events;
    if (!c.updates.empty()) events = parse_updates_file(c.updates, UpdateDirection::Restricting);
    const auto slack = CertificateSlack::maintained(inst.eps);
    json per_update = json::array();
    std::int64_t applied = 0;
    for (const auto& ev : events) {
        if (solver.terminal()) break;  // the dual certificate stays valid under restricting updates
        if (ev.kind != UpdateKind::RestrictCoveringEntry)
            throw Error(ErrorKind::NonMonotoneUpdate, "dynamic covering streams carry only C entries");
        const Outcome& o = solver.handle_update(ev);
        ++applied;
        per_update.push_back(to_string(o.tag));
        if (c.verify) {
            auto r = check_certificate(solver.instance().C, o, slack);
            if (!r.ok) throw VerifyFailure{"after update " + std::to_string(applied) + ": " + r.what};
        }
    }
    json j = outcome_json(solver.current());
    const auto& s = solver.stats();
    j["stats"] = stats_json(solver.engine().stats());
    j["stats"]["updates"] = applied;
    j["stats"]["updates_after_terminal"] = static_cast<std::int64_t>(events.size()) - applied;
    j["stats"]["exact_rechecks"] = s.exact_rechecks;
    j["stats"]["rebuilds"] = s.rebuilds;
    j["trace"] = per_update;
    if (c.verify) {
        auto r = check_certificate(solver.instance().C, solver.current(), slack);
        j["verify"] = cert_json(r);
        require(r);
    }
    return j;
}

json cmd_stream(const Config& c) {
    auto inst = load(c, InstanceKind::Covering, "covering").covering;
    inst.eps = c.eps;
    check_issues(validate(inst));
    const StreamMode mode = c.mode == "primal" ? StreamMode::PrimalOnly : StreamMode::FullDual;
    FileRowStream source(c.input);
    StreamRun run = solve_stream(source, inst.C.cols(), inst.lambda, inst.eps, mode);
    // Rows the final dual never reached carry zero weight.
    if (run.outcome.tag == OutcomeTag::PackingDual) run.outcome.vec.resize(inst.C.rows(), 0.0);
    json j = outcome_json(run.outcome);
    j["stats"] = stats_json(run.stats);
    j["stats"]["passes"] = run.passes;
    j["stats"]["peak_live_words"] = run.peak_live_words;
    if (c.verify) {
        // The primal-only mode reports a bare verdict when it cannot cover.
        auto r = run.outcome.vec.empty() ? CertificateReport{} : check_certificate(inst, run.outcome);
        j["verify"] = cert_json(r);
        require(r);
    }
    return j;
}

json cmd_online(const Config& c) {
    auto inst = load(c, InstanceKind::Covering, "covering").covering;
    inst.eps = c.eps;
    check_issues(validate(inst));
    OnlineWhackSolver solver(inst.C.cols(), inst.lambda, inst.eps);
    json steps = json::array();
    for (std::size_t i = 0; i < inst.C.rows(); ++i) {
        const OnlineStatus st = solver.insert_row(inst.C.row(i));
        const auto x = solver.current_x();
        steps.push_back({{"row", i}, {"digest", vector_digest(x)}, {"recourse", solver.recourse_total()}});
        if (st == OnlineStatus::Terminated) break;
    }
    json j = outcome_json(solver.current());
    j["stats"] = stats_json(solver.engine().stats());
    j["stats"]["recourse"] = solver.recourse_total();
    j["stats"]["phase_transitions"] = solver.phase_transitions();
    j["steps"] = steps;
    if (c.verify) {
        auto r = check_certificate(solver.rows_seen(), solver.current(), CertificateSlack::maintained(inst.eps));
        j["verify"] = cert_json(r);
        require(r);
    }
    return j;
}

json solution_json(const GeneralSolution& s) {
    json j{{"outcome", s.x.empty() ? "Null" : "CoveringPrimal"},
           {"digest", vector_digest(s.x)},
           {"objective", s.objective},
           {"dual_objective", s.dual_objective},
           {"mu", s.mu}};
    if (!s.y.empty()) j["dual_digest"] = vector_digest(s.y);
    return j;
}

json cmd_general(const Config& c) {
    GeneralInstance inst = load(c, InstanceKind::General, "general").general;
    check_issues(validate(inst));
    GeneralSolution sol;
    json stats;
    if (c.setting == "static") {
        sol = solve_general_static(inst, c.eps);
        stats["solves"] = sol.solves;
    } else if (c.setting == "dynamic") {
        GeneralDynamicSolver solver(inst, c.eps);
        std::int64_t applied = 0;
        if (!c.updates.empty())
            for (const auto& ev : parse_updates_file(c.updates, UpdateDirection::Restricting)) {
                solver.handle_update(ev);
                ++applied;
            }
        sol = solver.current();
        inst = solver.instance();
        stats = {{"updates", applied},
                 {"guesses", solver.guess_count()},
                 {"filtered_translations", solver.filtered_translations()},
                 {"expanded_entry_updates", solver.expanded_entry_updates()}};
    } else if (c.setting == "stream") {
        GeneralStreamRun run = solve_general_stream(inst, c.eps, StreamMode::FullDual);
        sol = run.solution;
        stats = {{"passes_interleaved", run.passes_interleaved},
                 {"passes_sequential", run.passes_sequential},
                 {"max_guess_passes", run.max_guess_passes}};
    } else if (c.setting == "online") {
        GeneralOnlineSolver solver(inst.a, inst.L, inst.U, c.eps);
        for (std::size_t i = 0; i < inst.C.rows(); ++i) solver.insert_row(inst.C.row(i), inst.b[i]);
        sol = solver.current();
        stats = {{"recourse", solver.recourse_total()},
                 {"recourse_bound", solver.phase_bound_total()},
                 {"guesses", solver.guess_count()}};
    } else {
        throw Error(ErrorKind::ParseError, "unknown setting " + c.setting);
    }
    json j = solution_json(sol);
    j["stats"] = stats;
    if (c.verify) {
        json v;
        double worst = std::numeric_limits<double>::infinity();
        if (!sol.x.empty())
            for (std::size_t i = 0; i < inst.C.rows(); ++i) {
                double d = 0.0;
                for (const auto& e : inst.C.row(i)) d += e.value * sol.x[e.index];
                worst = std::min(worst, d / inst.b[i]);
            }
        v["cover_ratio"] = sol.x.empty() ? 0.0 : worst;
        bool ok = !sol.x.empty() && worst >= 1.0 - c.eps - 1e-9;
        if (inst.C.rows() <= exact::kMaxDim && inst.C.cols() <= exact::kMaxDim) {
            auto ex = exact::solve_covering_exact(inst.C, inst.a, inst.b);
            if (ex.status == exact::LpStatus::Optimal) {
                const double opt = ex.value_d();
                v["opt"] = opt;
                v["opt_gap"] = std::abs(sol.objective - opt) / opt;
            }
        }
        v["certificate_ok"] = ok;
        j["verify"] = v;
        if (!ok) throw VerifyFailure{"covering point misses the (1 - eps) bound"};
    }
    return j;
}

json cmd_gen(const Config& c) {
    gen::Rng rng(c.seed);
    std::string text, updates;
    if (c.kind == "covering") {
        auto inst = gen::random_covering(rng, c.m, c.n, c.lambda, c.density, c.eps);
        text = emit(inst);
        if (c.stream == "restricting")
            updates = emit_updates(gen::restricting_stream(rng, inst.C, c.count), UpdateDirection::Restricting);
        else if (c.stream == "halving")
            updates = emit_updates(gen::halving_stream(rng, inst.C, c.count), UpdateDirection::Restricting);
    } else if (c.kind == "packing") {
        text = emit(gen::random_packing(rng, c.m, c.n, c.lambda, c.density, c.eps));
    } else if (c.kind == "positive") {
        auto inst = gen::random_positive(rng, c.mp, c.mc, c.n, c.L, c.U, c.density, c.eps);
        text = emit(inst);
        if (c.stream == "relaxing" || c.stream == "relaxing-translate")
            updates = emit_updates(gen::relaxing_stream(rng, inst, c.count, c.stream == "relaxing-translate"),
                                   UpdateDirection::Relaxing);
    } else if (c.kind == "general") {
        auto inst = gen::random_general(rng, c.m, c.n, c.L, c.U, c.density);
        text = emit(inst);
        if (c.stream == "restricting")
            updates = emit_updates(gen::general_restricting_stream(rng, inst, c.count), UpdateDirection::Restricting);
    } else {
        throw Error(ErrorKind::ParseError, "unknown kind " + c.kind);
    }
    auto write = [](const std::string& path, const std::string& body) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error(ErrorKind::ParseError, "cannot write " + path);
        f << body;
    };
    json j{{"kind", c.kind}, {"seed", c.seed}};
    if (c.out_path.empty()) j["instance"] = text;
    else write(c.out_path, text), j["instance_path"] = c.out_path;
    if (!updates.empty()) {
        if (c.updates_out.empty()) j["updates"] = updates;
        else write(c.updates_out, updates), j["updates_path"] = c.updates_out;
    }
    return j;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out) {
    CLI::App app{"Multiplicative-weights solvers for positive linear programs"};
    app.require_subcommand(1);
    Config c;

    auto common = [&](CLI::App* sub, bool needs_input = true) {
        sub->add_option("--eps", c.eps, "accuracy parameter")->each([&](const std::string&) { c.eps_set = true; });
        sub->add_flag("--verify", c.verify, "check the certificate and compare with the exact oracle");
        sub->add_option("--seed", c.seed, "random seed");
        sub->add_option("--report", c.report, "also write the JSON report to this path");
        if (needs_input) sub->add_option("instance", c.input, "instance file")->required();
    };

    auto* solve = app.add_subcommand("solve", "static covering by whack-a-mole");
    common(solve);
    c.mode = "fast";
    solve->add_option("--mode", c.mode, "basic | fast")->check(CLI::IsMember({"basic", "fast"}));
    auto* packing = app.add_subcommand("packing", "static packing by whack-a-mole");
    common(packing);
    packing->add_option("--mode", c.mode, "basic | fast")->check(CLI::IsMember({"basic", "fast"}));
    auto* positive = app.add_subcommand("positive", "mixed packing and covering by the greedy solver");
    common(positive);
    positive->add_option("--updates", c.updates, "relaxing update stream");
    auto* dynamic = app.add_subcommand("dynamic", "covering under restricting updates");
    common(dynamic);
    dynamic->add_option("--updates", c.updates, "restricting update stream");
    auto* stream = app.add_subcommand("stream", "multi-pass streaming covering");
    common(stream);
    stream->add_option("--mode", c.mode, "full | primal")->check(CLI::IsMember({"full", "primal"}));
    auto* online = app.add_subcommand("online", "covering rows arriving online");
    common(online);
    auto* general = app.add_subcommand("general", "general covering LP through guessing");
    common(general);
    general->add_option("--setting", c.setting, "static | dynamic | stream | online")
        ->check(CLI::IsMember({"static", "dynamic", "stream", "online"}));
    general->add_option("--updates", c.updates, "restricting update stream (dynamic)");
    auto* gen = app.add_subcommand("gen", "write a random instance and update stream");
    common(gen, false);
    gen->add_option("--kind", c.kind, "covering | packing | positive | general")
        ->check(CLI::IsMember({"covering", "packing", "positive", "general"}));
    gen->add_option("--stream", c.stream, "none | restricting | halving | relaxing | relaxing-translate");
    gen->add_option("--out", c.out_path, "instance output path");
    gen->add_option("--updates-out", c.updates_out, "update stream output path");
    gen->add_option("--count", c.count, "number of updates");
    gen->add_option("-m", c.m, "rows");
    gen->add_option("-n", c.n, "columns");
    gen->add_option("--mp", c.mp, "packing rows");
    gen->add_option("--mc", c.mc, "covering rows");
    gen->add_option("--density", c.density, "entry probability");
    gen->add_option("--lambda", c.lambda, "largest entry");
    gen->add_option("--lower", c.L, "smallest magnitude");
    gen->add_option("--upper", c.U, "largest magnitude");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, std::cerr, std::cerr);
        return code == 0 ? kExitOk : kExitInput;
    }
    if (stream->parsed() && c.mode == "fast") c.mode = "full";

    json report{{"schema", 1}};
    int code = kExitOk;
    try {
        json body;
        if (solve->parsed()) report["command"] = "solve", body = cmd_solve(c);
        else if (packing->parsed()) report["command"] = "packing", body = cmd_packing(c);
        else if (positive->parsed()) report["command"] = "positive", body = cmd_positive(c);
        else if (dynamic->parsed()) report["command"] = "dynamic", body = cmd_dynamic(c);
        else if (stream->parsed()) report["command"] = "stream", body = cmd_stream(c);
        else if (online->parsed()) report["command"] = "online", body = cmd_online(c);
        else if (general->parsed()) report["command"] = "general", body = cmd_general(c);
        else report["command"] = "gen", body = cmd_gen(c);
        report.update(body);
    } catch (const VerifyFailure& f) {
        report["error"] = {{"kind", "CertificateViolation"}, {"detail", f.what}};
        code = kExitCertificate;
    } catch (const Error& e) {
        std::string detail = e.what();
        const std::string prefix = std::string(to_string(e.kind())) + ": ";
        if (detail.rfind(prefix, 0) == 0) detail.erase(0, prefix.size());
        report["error"] = {{"kind", to_string(e.kind())}, {"detail", detail}};
        code = e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::NonMonotoneUpdate ? kExitInput
             : e.kind() == ErrorKind::CertificateViolation                                   ? kExitCertificate
                                                                                             : kExitFailure;
    } catch (const std::exception& e) {
        report["error"] = {{"kind", "Internal"}, {"detail", e.what()}};
        code = kExitFailure;
    }
    const std::string text = report.dump(2) + "\n";
    out << text;
    if (!c.report.empty()) {
        std::ofstream f(c.report, std::ios::binary);
        f << text;
    }
    if (code != kExitOk && report.contains("error"))
        std::cerr << report["error"]["kind"].get<std::string>() << ": " << report["error"]["detail"].get<std::string>()
                  << '\n';
    return code;
}

}  // namespace mwu
