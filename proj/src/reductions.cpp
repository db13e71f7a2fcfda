#include "mwu/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace mwu {

namespace {

// Slack between a guess' packing value and a feasible general dual.
constexpr double kDualShrink = 4.0;

std::vector<Entry> scaled_row(std::span<const Entry> row, double mu) {
    std::vector<Entry> out(row.begin(), row.end());
    for (auto& e : out) e.value *= mu;
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

void fill_primal(GeneralSolution& sol, std::span<const double> x_guess, double mu, std::span<const double> a,
                 std::span<const double> a_true) {
    sol.mu = mu;
    sol.x.resize(x_guess.size());
    for (std::size_t j = 0; j < x_guess.size(); ++j) sol.x[j] = mu * x_guess[j] / a[j];
    sol.objective = dot(sol.x, a_true);
}

void fill_dual(GeneralSolution& sol, std::span<const double> y_guess, double mu, double eps,
               std::span<const double> b, std::span<const double> b_true) {
    sol.y.assign(b.size(), 0.0);
    const double s = mu / (1.0 + kDualShrink * eps);
    for (std::size_t i = 0; i < b.size() && i < y_guess.size(); ++i) sol.y[i] = s * y_guess[i] / b[i];
    sol.dual_objective = dot(sol.y, b_true);
}

}  // namespace

SparseNonnegMatrix normalize(const GeneralInstance& inst) {
    const auto& C = inst.C;
    if (inst.a.size() != C.cols() || inst.b.size() != C.rows())
        throw Error(ErrorKind::PreconditionViolated, "a or b has the wrong length");
    SparseNonnegMatrix out(C.rows(), C.cols());
    for (std::size_t i = 0; i < C.rows(); ++i)
        for (const auto& e : C.row(i)) out.set(i, e.index, e.value / (inst.a[e.index] * inst.b[i]));
    return out;
}

std::vector<double> guess_grid(std::size_t n, double L, double U, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::EpsOutOfRange, "eps must lie in (0, 1)");
    if (!(L > 0.0 && U >= L)) throw Error(ErrorKind::PreconditionViolated, "need 0 < L <= U");
    const double base = L * L / U;
    const double span = std::log(static_cast<double>(std::max<std::size_t>(n, 1)) * std::pow(U / L, 3.0));
    const auto K = static_cast<std::size_t>(std::max(0.0, std::ceil(span / std::log1p(eps) - 1e-9)));
    std::vector<double> grid(K + 1);
    for (std::size_t k = 0; k <= K; ++k) grid[k] = base * std::pow(1.0 + eps, static_cast<double>(k));
    return grid;
}

CoveringInstance guess_instance(const SparseNonnegMatrix& normalized, double mu, double L, double U, double eps) {
    CoveringInstance g;
    g.C = SparseNonnegMatrix(normalized.rows(), normalized.cols());
    for (std::size_t i = 0; i < normalized.rows(); ++i)
        for (const auto& e : normalized.row(i)) g.C.set(i, e.index, mu * e.value);
    // Rounding in the normalisation may push an entry a hair over the width.
    g.lambda = std::max(mu * U / (L * L), g.C.max_value());
    g.eps = eps;
    return g;
}

GeneralSolution solve_general_static(const GeneralInstance& inst, double eps) {
    const SparseNonnegMatrix Cn = normalize(inst);
    std::vector<double> grid = guess_grid(Cn.cols(), inst.L, inst.U, eps);
    std::vector<std::optional<Outcome>> seen(grid.size());
    GeneralSolution sol;

    auto run = [&](std::size_t k) {
        return solve_fast(guess_instance(Cn, grid[k], inst.L, inst.U, eps)).outcome;
    };
    auto primal = [&](std::size_t k) {
        if (!seen[k]) {
            seen[k] = run(k);
            ++sol.solves;
        }
        return seen[k]->tag == OutcomeTag::CoveringPrimal;
    };

    // Coarse probes in parallel narrow the bracket before the serial bisection.
    const std::size_t probes = std::min<std::size_t>(grid.size(), 8);
    std::vector<std::size_t> idx(probes);
    for (std::size_t p = 0; p < probes; ++p)
        idx[p] = probes == 1 ? 0 : p * (grid.size() - 1) / (probes - 1);
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    std::vector<Outcome> coarse(idx.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(idx.size()); ++p) coarse[p] = run(idx[p]);
    for (std::size_t p = 0; p < idx.size(); ++p) seen[idx[p]] = std::move(coarse[p]);
    sol.solves += static_cast<std::int64_t>(idx.size());

    // The grid top should already be primal; extend it if rounding says otherwise.
    while (!primal(grid.size() - 1)) {
        grid.push_back(grid.back() * (1.0 + eps));
        seen.emplace_back();
    }

    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(grid.size()) - 1;
    for (std::size_t k : idx)
        if (seen[k]->tag == OutcomeTag::CoveringPrimal) {
            hi = static_cast<std::ptrdiff_t>(k);
            break;
        }
    std::ptrdiff_t lo = -1;
    for (std::size_t k : idx)
        if (static_cast<std::ptrdiff_t>(k) < hi) lo = static_cast<std::ptrdiff_t>(k);
    while (hi - lo > 1) {
        std::ptrdiff_t mid = lo + (hi - lo) / 2;
        if (primal(static_cast<std::size_t>(mid))) hi = mid;
        else lo = mid;
    }

    fill_primal(sol, seen[hi]->vec, grid[hi], inst.a, inst.a);
    if (lo >= 0 && seen[lo]->tag == OutcomeTag::PackingDual)
        fill_dual(sol, seen[lo]->vec, grid[lo], eps, inst.b, inst.b);
    return sol;
}

GeneralDynamicSolver::GeneralDynamicSolver(GeneralInstance inst, double eps)
    : inst_(std::move(inst)), eps_(eps), applied_a_(inst_.a), applied_b_(inst_.b) {
    const SparseNonnegMatrix Cn = normalize(inst_);
    guesses_ = guess_grid(Cn.cols(), inst_.L, inst_.U, eps_);
    solvers_.resize(guesses_.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t g = 0; g < static_cast<std::ptrdiff_t>(guesses_.size()); ++g)
        solvers_[g] = std::make_unique<DynamicWhackSolver>(guess_instance(Cn, guesses_[g], inst_.L, inst_.U, eps_));
}

void GeneralDynamicSolver::push_entry(std::size_t i, std::size_t j) {
    const double v = inst_.C.at(i, j) / (applied_a_[j] * applied_b_[i]);
    for (std::size_t g = 0; g < solvers_.size(); ++g) {
        auto& s = *solvers_[g];
        if (s.terminal()) continue;
        const double target = guesses_[g] * v;
        if (!(target < s.instance().C.at(i, j))) continue;
        s.handle_update(UpdateEvent{UpdateKind::RestrictCoveringEntry, i, j, target});
        ++expanded_;
    }
}

void GeneralDynamicSolver::handle_update(const UpdateEvent& ev) {
    const auto& C = inst_.C;
    switch (ev.kind) {
    case UpdateKind::RestrictCoveringEntry:
        apply_update(inst_.C, ev);
        push_entry(ev.row, ev.col);
        return;
    case UpdateKind::TranslateCovering: {
        if (ev.row >= C.rows()) throw Error(ErrorKind::IndexOutOfRange, "row out of range");
        if (!(ev.new_value > inst_.b[ev.row])) throw Error(ErrorKind::NonMonotoneUpdate, "b_i may only grow");
        inst_.b[ev.row] = ev.new_value;
        if (ev.new_value < applied_b_[ev.row] * (1.0 + eps_)) {
            ++filtered_;
            return;
        }
        applied_b_[ev.row] = ev.new_value;
        for (const auto& e : C.row(ev.row)) push_entry(ev.row, e.index);
        return;
    }
    case UpdateKind::TranslateObjective: {
        if (ev.col >= C.cols()) throw Error(ErrorKind::IndexOutOfRange, "column out of range");
        if (!(ev.new_value > inst_.a[ev.col])) throw Error(ErrorKind::NonMonotoneUpdate, "a_j may only grow");
        inst_.a[ev.col] = ev.new_value;
        if (ev.new_value < applied_a_[ev.col] * (1.0 + eps_)) {
            ++filtered_;
            return;
        }
        applied_a_[ev.col] = ev.new_value;
        for (const auto& e : C.col(ev.col)) push_entry(e.index, ev.col);
        return;
    }
    default:
        throw Error(ErrorKind::NonMonotoneUpdate, "update would relax the covering problem");
    }
}

GeneralSolution GeneralDynamicSolver::current() const {
    GeneralSolution sol;
    std::size_t g = 0;
    while (g < solvers_.size() && solvers_[g]->terminal()) ++g;
    if (g == solvers_.size()) return sol;  // every guess failed; the grid was too short
    fill_primal(sol, solvers_[g]->current().vec, guesses_[g], applied_a_, inst_.a);
    if (g > 0) fill_dual(sol, solvers_[g - 1]->current().vec, guesses_[g - 1], eps_, applied_b_, inst_.b);
    return sol;
}

GeneralStreamRun solve_general_stream(const GeneralInstance& inst, double eps, StreamMode mode) {
    const SparseNonnegMatrix Cn = normalize(inst);
    const std::vector<double> grid = guess_grid(Cn.cols(), inst.L, inst.U, eps);
    std::vector<StreamSolver> solvers;
    solvers.reserve(grid.size());
    for (double mu : grid) solvers.emplace_back(Cn.cols(), guess_instance(Cn, mu, inst.L, inst.U, eps).lambda, eps, mode);

    GeneralStreamRun run;
    MatrixRowStream source(Cn);
    auto pending = [&] {
        return std::any_of(solvers.begin(), solvers.end(), [](const StreamSolver& s) { return !s.finished(); });
    };
    while (pending()) {
        ++run.passes_interleaved;
        for (auto& s : solvers) s.begin_pass();
        source.restart();
        while (auto row = source.next())
            for (std::size_t g = 0; g < solvers.size(); ++g) {
                if (solvers[g].finished()) continue;
                StreamRow scaled{row->index, scaled_row(row->entries, grid[g])};
                solvers[g].consume(scaled);
            }
        for (auto& s : solvers) s.end_pass();
    }

    std::size_t best = grid.size();
    for (std::size_t g = 0; g < grid.size(); ++g) {
        run.passes_sequential += solvers[g].passes();
        run.max_guess_passes = std::max(run.max_guess_passes, solvers[g].passes());
        if (best == grid.size() && solvers[g].outcome()->tag == OutcomeTag::CoveringPrimal) best = g;
    }
    run.solution.solves = static_cast<std::int64_t>(grid.size());
    if (best == grid.size()) return run;
    fill_primal(run.solution, solvers[best].outcome()->vec, grid[best], inst.a, inst.a);
    if (best > 0 && solvers[best - 1].outcome()->tag == OutcomeTag::PackingDual)
        fill_dual(run.solution, solvers[best - 1].outcome()->vec, grid[best - 1], eps, inst.b, inst.b);
    return run;
}

GeneralOnlineSolver::GeneralOnlineSolver(std::vector<double> a, double L, double U, double eps)
    : a_(std::move(a)), L_(L), U_(U), eps_(eps) {
    guesses_ = guess_grid(a_.size(), L_, U_, eps_);
    for (double mu : guesses_) solvers_.push_back(std::make_unique<OnlineWhackSolver>(a_.size(), mu * U_ / (L_ * L_), eps_));
}

void GeneralOnlineSolver::insert_row(std::span<const Entry> row, double b_i) {
    if (!(b_i > 0.0)) throw Error(ErrorKind::PreconditionViolated, "b_i must be positive");
    std::vector<Entry> norm(row.begin(), row.end());
    for (auto& e : norm) {
        if (e.index >= a_.size()) throw Error(ErrorKind::IndexOutOfRange, "column out of range");
        e.value /= a_[e.index] * b_i;
    }
    b_seen_.push_back(b_i);
    for (std::size_t g = 0; g < solvers_.size(); ++g) {
        if (solvers_[g]->terminated()) continue;
        auto scaled = scaled_row(norm, guesses_[g]);
        // Same rounding guard as guess_instance: clamp to the solver's width.
        for (auto& e : scaled) e.value = std::min(e.value, solvers_[g]->engine().lambda());
        solvers_[g]->insert_row(scaled);
    }
}

GeneralSolution GeneralOnlineSolver::current() const {
    GeneralSolution sol;
    std::size_t g = 0;
    while (g < solvers_.size() && solvers_[g]->terminated()) ++g;
    if (g == solvers_.size()) return sol;
    fill_primal(sol, solvers_[g]->current_x(), guesses_[g], a_, a_);
    if (g > 0) fill_dual(sol, solvers_[g - 1]->current().vec, guesses_[g - 1], eps_, b_seen_, b_seen_);
    return sol;
}

std::int64_t GeneralOnlineSolver::recourse_total() const {
    std::int64_t r = 0;
    for (const auto& s : solvers_) r += s->recourse_total();
    return r;
}

std::int64_t GeneralOnlineSolver::phase_bound_total() const {
    return static_cast<std::int64_t>(guesses_.size()) * static_cast<std::int64_t>(a_.size()) *
           (phase_cap(a_.size(), eps_) - 1);
}

}  // namespace mwu
