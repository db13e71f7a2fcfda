#include "mwu/instance.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mwu/kernels.hpp"

namespace mwu {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NegativeEntry: return "NegativeEntry";
        case ErrorKind::EntryAboveLambda: return "EntryAboveLambda";
        case ErrorKind::EpsOutOfRange: return "EpsOutOfRange";
        case ErrorKind::EmptyMatrix: return "EmptyMatrix";
        case ErrorKind::EntryOutOfBounds: return "EntryOutOfBounds";
        case ErrorKind::NonMonotoneUpdate: return "NonMonotoneUpdate";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::UpdateAfterTerminal: return "UpdateAfterTerminal";
        case ErrorKind::RowAfterTermination: return "RowAfterTermination";
        case ErrorKind::StreamExhaustedMidRow: return "StreamExhaustedMidRow";
        case ErrorKind::ZeroScaleFactor: return "ZeroScaleFactor";
        case ErrorKind::UnboundedCost: return "UnboundedCost";
        case ErrorKind::NotCheap: return "NotCheap";
        case ErrorKind::NotInfeasibleYet: return "NotInfeasibleYet";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::CertificateViolation: return "CertificateViolation";
        case ErrorKind::InvalidSelection: return "InvalidSelection";
    }
    return "Unknown";
}

const char* to_string(OutcomeTag tag) {
    switch (tag) {
        case OutcomeTag::CoveringPrimal: return "CoveringPrimal";
        case OutcomeTag::PackingDual: return "PackingDual";
        case OutcomeTag::PackingPrimal: return "PackingPrimal";
        case OutcomeTag::CoveringDual: return "CoveringDual";
        case OutcomeTag::PositiveSolution: return "PositiveSolution";
        case OutcomeTag::Infeasible: return "Infeasible";
        case OutcomeTag::Null: return "Null";
    }
    return "Unknown";
}

namespace {

void check_shape(const SparseNonnegMatrix& M, const char* name, std::vector<ValidationIssue>& out) {
    if (M.rows() == 0 || M.cols() == 0)
        out.push_back({ErrorKind::EmptyMatrix, std::string(name) + " has no rows or columns"});
}

void check_lambda(const SparseNonnegMatrix& M, double lambda, double eps,
                  std::vector<ValidationIssue>& out) {
    check_shape(M, "matrix", out);
    if (!(eps > 0.0 && eps < 0.5))
        out.push_back({ErrorKind::EpsOutOfRange, "eps must lie in (0, 1/2)"});
    if (!(lambda > 0.0)) {
        out.push_back({ErrorKind::EntryAboveLambda, "lambda must be positive"});
        return;
    }
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (const auto& e : M.row(i))
            if (e.value > lambda) {
                std::ostringstream s;
                s << "entry (" << i << "," << e.index << ")=" << e.value << " exceeds lambda " << lambda;
                out.push_back({ErrorKind::EntryAboveLambda, s.str()});
            }
}

void check_bounds(const SparseNonnegMatrix& M, double L, double U, const char* name,
                  std::vector<ValidationIssue>& out) {
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (const auto& e : M.row(i))
            if (e.value < L || e.value > U) {
                std::ostringstream s;
                s << name << " entry (" << i << "," << e.index << ")=" << e.value << " outside [L,U]";
                out.push_back({ErrorKind::EntryOutOfBounds, s.str()});
            }
}

}  // namespace

std::vector<ValidationIssue> validate(const CoveringInstance& inst) {
    std::vector<ValidationIssue> out;
    check_lambda(inst.C, inst.lambda, inst.eps, out);
    return out;
}

std::vector<ValidationIssue> validate(const PackingInstance& inst) {
    std::vector<ValidationIssue> out;
    check_lambda(inst.P, inst.lambda, inst.eps, out);
    return out;
}

std::vector<ValidationIssue> validate(const GeneralInstance& inst) {
    std::vector<ValidationIssue> out;
    check_shape(inst.C, "C", out);
    if (!(inst.L > 0.0 && inst.L <= inst.U))
        out.push_back({ErrorKind::EntryOutOfBounds, "need 0 < L <= U"});
    if (inst.a.size() != inst.C.cols() || inst.b.size() != inst.C.rows())
        out.push_back({ErrorKind::IndexOutOfRange, "a/b length mismatch"});
    for (double v : inst.a)
        if (!(v > 0.0)) out.push_back({ErrorKind::ZeroScaleFactor, "a must be positive"});
    for (double v : inst.b)
        if (!(v > 0.0)) out.push_back({ErrorKind::ZeroScaleFactor, "b must be positive"});
    check_bounds(inst.C, inst.L, inst.U, "C", out);
    for (double v : inst.a)
        if (v > 0.0 && (v < inst.L || v > inst.U))
            out.push_back({ErrorKind::EntryOutOfBounds, "a outside [L,U]"});
    for (double v : inst.b)
        if (v > 0.0 && (v < inst.L || v > inst.U))
            out.push_back({ErrorKind::EntryOutOfBounds, "b outside [L,U]"});
    return out;
}

std::vector<ValidationIssue> validate(const PositiveInstance& inst) {
    std::vector<ValidationIssue> out;
    check_shape(inst.P, "P", out);
    check_shape(inst.C, "C", out);
    if (inst.P.cols() != inst.C.cols())
        out.push_back({ErrorKind::IndexOutOfRange, "P and C column counts differ"});
    if (!(inst.eps > 0.0 && inst.eps <= 1.0 / 200.0 + 1e-15))
        out.push_back({ErrorKind::EpsOutOfRange, "eps must lie in (0, 1/200]"});
    if (!(inst.L > 0.0 && inst.L <= inst.U))
        out.push_back({ErrorKind::EntryOutOfBounds, "need 0 < L <= U"});
    check_bounds(inst.P, inst.L, inst.U, "P", out);
    check_bounds(inst.C, inst.L, inst.U, "C", out);
    return out;
}

void apply_update(SparseNonnegMatrix& m, const UpdateEvent& ev) {
    if (ev.row >= m.rows() || ev.col >= m.cols())
        throw Error(ErrorKind::IndexOutOfRange, "update index");
    double old = m.at(ev.row, ev.col);
    bool ok = false;
    switch (ev.kind) {
        case UpdateKind::RestrictCoveringEntry: ok = ev.new_value < old; break;
        case UpdateKind::RelaxCoveringEntry: ok = ev.new_value > old; break;
        case UpdateKind::RelaxPackingEntry: ok = ev.new_value < old; break;
        default: throw Error(ErrorKind::PreconditionViolated, "translation is not an entry update");
    }
    if (!ok || ev.new_value < 0.0) {
        std::ostringstream s;
        s << "entry (" << ev.row << "," << ev.col << ") " << old << " -> " << ev.new_value;
        throw Error(ErrorKind::NonMonotoneUpdate, s.str());
    }
    m.set(ev.row, ev.col, ev.new_value);
}

std::int64_t rounds_for(std::size_t n, double lambda, double eps) {
    double nn = static_cast<double>(n < 2 ? 2 : n);
    double T = std::ceil(lambda * std::log(nn) / (eps * eps));
    return T < 1.0 ? 1 : static_cast<std::int64_t>(T);
}

CertificateSlack CertificateSlack::static_template(double eps) {
    CertificateSlack s;
    s.primal_cover_lo = 1.0 - eps;
    s.primal_pack_hi = 1.0 + eps;
    s.dual_pack_hi = 1.0 + 4.0 * eps;
    s.dual_cover_lo = 1.0 - 4.0 * eps;
    return s;
}

CertificateSlack CertificateSlack::maintained(double eps) {
    CertificateSlack s = static_template(eps);
    s.primal_mass_hi = 1.0 + eps;
    return s;
}

CertificateSlack CertificateSlack::extracted_dual(double eps) {
    CertificateSlack s = static_template(eps);
    s.dual_mass_hi = std::numeric_limits<double>::infinity();
    s.dual_pack_hi = 1.0 + 5.0 * eps;
    return s;
}

namespace {

double total(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

CertificateReport fail(std::string what, std::size_t idx, double val) {
    return CertificateReport{false, std::move(what), idx, val};
}

CertificateReport check_mass(std::span<const double> v, double lo, double hi, double tol) {
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!(v[k] >= 0.0)) return fail("negative coordinate", k, v[k]);
    double s = total(v);
    if (s < lo - tol || s > hi + tol) return fail("mass out of range", 0, s);
    return {};
}

}  // namespace

CertificateReport check_certificate(const SparseNonnegMatrix& C, const Outcome& out,
                                    const CertificateSlack& sl) {
    switch (out.tag) {
        case OutcomeTag::CoveringPrimal:
        case OutcomeTag::PackingPrimal: {
            if (out.vec.size() != C.cols()) return fail("primal length mismatch", 0, 0.0);
            auto r = check_mass(out.vec, sl.primal_mass_lo, sl.primal_mass_hi, sl.tol);
            if (!r.ok) return r;
            auto cx = kernels::row_products(C, out.vec);
            for (std::size_t i = 0; i < cx.size(); ++i) {
                if (out.tag == OutcomeTag::CoveringPrimal && cx[i] < sl.primal_cover_lo - sl.tol)
                    return fail("covering row below bound", i, cx[i]);
                if (out.tag == OutcomeTag::PackingPrimal && cx[i] > sl.primal_pack_hi + sl.tol)
                    return fail("packing row above bound", i, cx[i]);
            }
            return {};
        }
        case OutcomeTag::PackingDual:
        case OutcomeTag::CoveringDual: {
            if (out.vec.size() != C.rows()) return fail("dual length mismatch", 0, 0.0);
            auto r = check_mass(out.vec, sl.dual_mass_lo, sl.dual_mass_hi, sl.tol);
            if (!r.ok) return r;
            auto cty = kernels::col_products(C, out.vec);
            for (std::size_t j = 0; j < cty.size(); ++j) {
                if (out.tag == OutcomeTag::PackingDual && cty[j] > sl.dual_pack_hi + sl.tol)
                    return fail("dual column above bound", j, cty[j]);
                if (out.tag == OutcomeTag::CoveringDual && cty[j] < sl.dual_cover_lo - sl.tol)
                    return fail("dual column below bound", j, cty[j]);
            }
            return {};
        }
        case OutcomeTag::Null:
        case OutcomeTag::Infeasible:
            return {};
        case OutcomeTag::PositiveSolution:
            return fail("positive solution needs a positive instance", 0, 0.0);
    }
    return {};
}

CertificateReport check_certificate(const CoveringInstance& inst, const Outcome& out) {
    return check_certificate(inst.C, out, CertificateSlack::static_template(inst.eps));
}

CertificateReport check_certificate(const PackingInstance& inst, const Outcome& out) {
    return check_certificate(inst.P, out, CertificateSlack::static_template(inst.eps));
}

CertificateReport check_certificate(const PositiveInstance& inst, const Outcome& out,
                                    double pack_factor) {
    if (out.tag == OutcomeTag::Infeasible || out.tag == OutcomeTag::Null) return {};
    if (out.tag != OutcomeTag::PositiveSolution) return fail("unexpected outcome tag", 0, 0.0);
    if (out.vec.size() != inst.P.cols()) return fail("solution length mismatch", 0, 0.0);
    const double tol = 1e-9;
    for (std::size_t k = 0; k < out.vec.size(); ++k)
        if (!(out.vec[k] >= 0.0)) return fail("negative coordinate", k, out.vec[k]);
    auto px = kernels::row_products(inst.P, out.vec);
    for (std::size_t i = 0; i < px.size(); ++i)
        if (px[i] > 1.0 + pack_factor * inst.eps + tol) return fail("packing row above bound", i, px[i]);
    auto cx = kernels::row_products(inst.C, out.vec);
    for (std::size_t j = 0; j < cx.size(); ++j)
        if (cx[j] < 1.0 - tol) return fail("covering row below 1", j, cx[j]);
    return {};
}

}  // namespace mwu
