#include "mwu/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "mwu/errors.hpp"

namespace mwu::exact {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

std::vector<double> to_doubles(const std::vector<Rational>& v) {
    std::vector<double> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k].get_d();
    return out;
}

void check_size(std::size_t m, std::size_t n) {
    if (m > kMaxDim || n > kMaxDim) throw Error(ErrorKind::TooLarge, "exact oracle is limited to 12 rows and columns");
}

Matrix dense(const SparseNonnegMatrix& M) {
    Matrix out(M.rows(), std::vector<Rational>(M.cols(), 0));
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (const auto& e : M.row(i)) out[i][e.index] = to_rational(e.value);
    return out;
}

std::vector<Rational> rationals(std::span<const double> v) {
    std::vector<Rational> out;
    out.reserve(v.size());
    for (double d : v) out.push_back(to_rational(d));
    return out;
}

// Solves the square system M z = r; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(Matrix M, std::vector<Rational> r) {
    const std::size_t n = r.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && M[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(M[p], M[c]);
        std::swap(r[p], r[c]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || M[i][c] == 0) continue;
            Rational f = M[i][c] / M[c][c];
            for (std::size_t k = c; k < n; ++k) M[i][k] -= f * M[c][k];
            r[i] -= f * r[c];
        }
    }
    std::vector<Rational> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / M[i][i];
    return z;
}

// Calls visit(z) for every basic solution of {G z >= h} (rows of G include
// the nonnegativity rows) that satisfies all constraints.
template <class Visit>
void for_each_vertex(const Matrix& G, const std::vector<Rational>& h, std::size_t n, Visit visit) {
    const std::size_t rows = G.size();
    std::vector<std::size_t> pick(n);
    for (std::size_t k = 0; k < n; ++k) pick[k] = k;
    if (n == 0 || n > rows) return;
    for (;;) {
        Matrix M(n);
        std::vector<Rational> r(n);
        for (std::size_t k = 0; k < n; ++k) {
            M[k] = G[pick[k]];
            r[k] = h[pick[k]];
        }
        if (auto z = solve_square(std::move(M), std::move(r))) {
            bool ok = true;
            for (std::size_t i = 0; i < rows && ok; ++i) {
                Rational s = 0;
                for (std::size_t k = 0; k < n; ++k) s += G[i][k] * (*z)[k];
                ok = s >= h[i];
            }
            if (ok) visit(*z);
        }
        // Next combination in lexicographic order.
        std::size_t k = n;
        while (k > 0 && pick[k - 1] == rows - n + k - 1) --k;
        if (k == 0) return;
        ++pick[k - 1];
        for (std::size_t t = k; t < n; ++t) pick[t] = pick[t - 1] + 1;
    }
}

}  // namespace

Rational to_rational(double v) {
    Rational q(v);  // mpq_set_d is exact for finite doubles
    q.canonicalize();
    return q;
}

std::vector<double> ExactLPResult::x_d() const { return to_doubles(x); }
std::vector<double> ExactLPResult::y_d() const { return to_doubles(y); }

ExactLPResult simplex_max(const Matrix& A, const std::vector<Rational>& b, const std::vector<Rational>& c) {
    const std::size_t m = A.size(), n = c.size();
    for (const auto& v : b)
        if (v < 0) throw Error(ErrorKind::PreconditionViolated, "simplex needs b >= 0");
    // Tableau columns: n structural, m slacks, then the right-hand side.
    const std::size_t W = n + m + 1;
    Matrix T(m + 1, std::vector<Rational>(W, 0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1;
        T[i][W - 1] = b[i];
    }
    for (std::size_t j = 0; j < n; ++j) T[m][j] = -c[j];  // reduced costs
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    ExactLPResult res;
    for (;;) {
        std::size_t enter = W;
        for (std::size_t j = 0; j + 1 < W; ++j)
            if (T[m][j] < 0) {
                enter = j;
                break;
            }
        if (enter == W) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            Rational ratio = T[i][W - 1] / T[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) {
            res.status = LpStatus::Unbounded;
            return res;
        }
        Rational piv = T[leave][enter];
        for (auto& v : T[leave]) v /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Rational f = T[i][enter];
            for (std::size_t j = 0; j < W; ++j) T[i][j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }
    res.status = LpStatus::Optimal;
    res.value = T[m][W - 1];
    res.x.assign(n, 0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) res.x[basis[i]] = T[i][W - 1];
    res.y.resize(m);
    for (std::size_t i = 0; i < m; ++i) res.y[i] = T[m][n + i];
    return res;
}

ExactLPResult solve_packing_exact(const SparseNonnegMatrix& C, std::span<const double> a, std::span<const double> b) {
    check_size(C.rows(), C.cols());
    if (a.size() != C.cols() || b.size() != C.rows())
        throw Error(ErrorKind::PreconditionViolated, "a or b has the wrong length");
    // Rows of the packing LP are the columns of C.
    Matrix At(C.cols(), std::vector<Rational>(C.rows(), 0));
    for (std::size_t i = 0; i < C.rows(); ++i)
        for (const auto& e : C.row(i)) At[e.index][i] = to_rational(e.value);
    return simplex_max(At, rationals(a), rationals(b));
}

ExactLPResult solve_covering_exact(const SparseNonnegMatrix& C, std::span<const double> a, std::span<const double> b) {
    ExactLPResult pack = solve_packing_exact(C, a, b);
    ExactLPResult res;
    if (pack.status == LpStatus::Unbounded) {
        res.status = LpStatus::Infeasible;
        return res;
    }
    res.status = LpStatus::Optimal;
    res.value = pack.value;
    res.x = pack.y;
    res.y = pack.x;
    return res;
}

ExactLPResult covering_by_vertices(const SparseNonnegMatrix& C, std::span<const double> a, std::span<const double> b) {
    const std::size_t m = C.rows(), n = C.cols();
    check_size(m, n);
    Matrix G = dense(C);
    std::vector<Rational> h = rationals(b);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Rational> e(n, 0);
        e[k] = 1;
        G.push_back(e);
        h.push_back(0);
    }
    const auto cost = rationals(a);
    ExactLPResult res;
    for_each_vertex(G, h, n, [&](const std::vector<Rational>& z) {
        Rational v = 0;
        for (std::size_t k = 0; k < n; ++k) v += cost[k] * z[k];
        if (res.status != LpStatus::Optimal || v < res.value) {
            res.status = LpStatus::Optimal;
            res.value = v;
            res.x = z;
        }
    });
    return res;
}

Feasibility positive_feasible_exact(const SparseNonnegMatrix& P, const SparseNonnegMatrix& C, const Rational& slack) {
    const std::size_t n = P.cols();
    check_size(std::max(P.rows(), C.rows()), n);
    if (C.cols() != n) throw Error(ErrorKind::PreconditionViolated, "P and C column counts differ");
    // max t s.t. Px <= 1 + s, t - Cx <= 0, t <= 1 over x, t >= 0.
    Matrix A;
    std::vector<Rational> rhs;
    for (std::size_t i = 0; i < P.rows(); ++i) {
        std::vector<Rational> r(n + 1, 0);
        for (const auto& e : P.row(i)) r[e.index] = to_rational(e.value);
        A.push_back(std::move(r));
        rhs.push_back(1 + slack);
    }
    for (std::size_t j = 0; j < C.rows(); ++j) {
        std::vector<Rational> r(n + 1, 0);
        for (const auto& e : C.row(j)) r[e.index] = -to_rational(e.value);
        r[n] = 1;
        A.push_back(std::move(r));
        rhs.push_back(0);
    }
    std::vector<Rational> cap(n + 1, 0);
    cap[n] = 1;
    A.push_back(cap);
    rhs.push_back(1);
    std::vector<Rational> obj(n + 1, 0);
    obj[n] = 1;
    ExactLPResult r = simplex_max(A, rhs, obj);
    Feasibility out;
    out.feasible = r.status == LpStatus::Optimal && r.value == 1;
    if (out.feasible) out.x.assign(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(n));
    return out;
}

Feasibility positive_feasible_exact(const SparseNonnegMatrix& P, const SparseNonnegMatrix& C, double slack) {
    return positive_feasible_exact(P, C, to_rational(slack));
}

Feasibility positive_feasible_by_vertices(const SparseNonnegMatrix& P, const SparseNonnegMatrix& C, const Rational& slack) {
    const std::size_t n = P.cols();
    check_size(std::max(P.rows(), C.rows()), n);
    Matrix G;
    std::vector<Rational> h;
    for (std::size_t i = 0; i < P.rows(); ++i) {
        std::vector<Rational> r(n, 0);
        for (const auto& e : P.row(i)) r[e.index] = -to_rational(e.value);
        G.push_back(std::move(r));
        h.push_back(-(1 + slack));
    }
    Matrix Cd = dense(C);
    for (auto& r : Cd) {
        G.push_back(std::move(r));
        h.push_back(1);
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Rational> e(n, 0);
        e[k] = 1;
        G.push_back(e);
        h.push_back(0);
    }
    Feasibility out;
    // The region lies in the nonnegative orthant, so it is nonempty iff it has a vertex.
    for_each_vertex(G, h, n, [&](const std::vector<Rational>& z) {
        if (!out.feasible) {
            out.feasible = true;
            out.x = z;
        }
    });
    return out;
}

std::int64_t brute_force_step_size(std::span<const Entry> row, std::span<const double> xh, double W, double eps,
                                   double lambda, std::int64_t remaining) {
    for (std::int64_t d = 1; d <= remaining; ++d) {
        long double s = 0.0;
        for (const auto& e : row)
            s += static_cast<long double>(e.value) *
                 std::pow(1.0L + static_cast<long double>(eps) * e.value / lambda, static_cast<long double>(d)) *
                 xh[e.index] / W;
        if (s >= 1.0L) return d;
    }
    return remaining;
}

double brute_force_delta(std::span<const double> packing_col, std::span<const double> active_covering_col,
                         double eps, double eta) {
    double kappa = 0.0;
    for (double v : packing_col) kappa = std::max(kappa, v);
    for (double v : active_covering_col) kappa = std::max(kappa, v);
    if (kappa <= 0.0) return std::numeric_limits<double>::infinity();
    return eps / (eta * kappa);
}

}  // namespace mwu::exact
