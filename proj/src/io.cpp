#include "mwu/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace mwu {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

struct Reader {
    std::istream& in;
    std::size_t line_no = 0;

    // Next non-blank, non-comment line split into a stream; false at EOF.
    bool next(std::istringstream& ss, std::string& tag) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            ss.clear();
            ss.str(line);
            if (ss >> tag) return true;
        }
        return false;
    }
};

template <class... T>
void read_fields(std::istringstream& ss, std::size_t line, T&... out) {
    if (!((ss >> out) && ...)) parse_fail(line, "missing or malformed field");
    std::string extra;
    if (ss >> extra) parse_fail(line, "unexpected trailing text '" + extra + "'");
}

void set_entry(SparseNonnegMatrix& M, std::size_t i, std::size_t j, double v, std::size_t line) {
    if (i >= M.rows() || j >= M.cols()) parse_fail(line, "entry index out of range");
    if (!(v >= 0.0)) parse_fail(line, "negative or NaN entry");
    M.set(i, j, v);
}

std::ostream& prec(std::ostream& os) {
    os.precision(std::numeric_limits<double>::max_digits10);
    return os;
}

void emit_matrix(std::ostream& os, const SparseNonnegMatrix& M, char tag) {
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (const auto& e : M.row(i)) os << tag << ' ' << i << ' ' << e.index << ' ' << e.value << '\n';
}

}  // namespace

ParsedInstance parse_instance(std::istream& in) {
    Reader r{in};
    std::istringstream ss;
    std::string tag;
    if (!r.next(ss, tag)) parse_fail(r.line_no, "empty instance");
    ParsedInstance out;
    std::size_t m = 0, n = 0, mc = 0;
    double lambda = 1.0;
    if (tag == "covering" || tag == "packing") {
        read_fields(ss, r.line_no, m, n, lambda);
        out.kind = tag == "covering" ? InstanceKind::Covering : InstanceKind::Packing;
    } else if (tag == "positive") {
        read_fields(ss, r.line_no, m, mc, n);
        out.kind = InstanceKind::Positive;
    } else if (tag == "general") {
        read_fields(ss, r.line_no, m, n);
        out.kind = InstanceKind::General;
    } else {
        parse_fail(r.line_no, "unknown header '" + tag + "'");
    }

    SparseNonnegMatrix C(out.kind == InstanceKind::Positive ? mc : m, n);
    SparseNonnegMatrix P(out.kind == InstanceKind::Positive ? m : 0, n);
    std::vector<double> a(n, 0.0), b(m, 0.0);
    bool has_bounds = false;
    double L = 0.0, U = 0.0;
    while (r.next(ss, tag)) {
        std::size_t i = 0, j = 0;
        double v = 0.0;
        if (tag == "C" || tag == "P") {
            read_fields(ss, r.line_no, i, j, v);
            bool packing_entry = tag == "P";
            if (packing_entry && out.kind != InstanceKind::Positive) {
                // A packing instance stores its matrix under either tag.
                if (out.kind != InstanceKind::Packing) parse_fail(r.line_no, "P entries need a positive or packing header");
                packing_entry = false;
            }
            set_entry(packing_entry ? P : C, i, j, v, r.line_no);
        } else if (tag == "a" && out.kind == InstanceKind::General) {
            read_fields(ss, r.line_no, j, v);
            if (j >= n) parse_fail(r.line_no, "objective index out of range");
            a[j] = v;
        } else if (tag == "b" && out.kind == InstanceKind::General) {
            read_fields(ss, r.line_no, i, v);
            if (i >= m) parse_fail(r.line_no, "right-hand side index out of range");
            b[i] = v;
        } else if (tag == "bounds") {
            read_fields(ss, r.line_no, L, U);
            has_bounds = true;
        } else {
            parse_fail(r.line_no, "unexpected line tag '" + tag + "'");
        }
    }

    auto data_bounds = [&](std::initializer_list<const SparseNonnegMatrix*> ms, std::initializer_list<const std::vector<double>*> vs) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (auto* M : ms)
            if (M->nnz()) {
                lo = std::min(lo, M->min_nonzero());
                hi = std::max(hi, M->max_value());
            }
        for (auto* v : vs)
            for (double d : *v)
                if (d > 0.0) {
                    lo = std::min(lo, d);
                    hi = std::max(hi, d);
                }
        if (hi == 0.0) lo = hi = 1.0;
        L = lo;
        U = hi;
    };

    switch (out.kind) {
    case InstanceKind::Covering:
        out.covering = CoveringInstance{std::move(C), lambda, 0.1};
        break;
    case InstanceKind::Packing:
        out.packing = PackingInstance{std::move(C), lambda, 0.1};
        break;
    case InstanceKind::Positive:
        if (!has_bounds) data_bounds({&P, &C}, {});
        out.positive = PositiveInstance{std::move(P), std::move(C), L, U, 1.0 / 200.0};
        break;
    case InstanceKind::General:
        if (!has_bounds) data_bounds({&C}, {&a, &b});
        out.general = GeneralInstance{std::move(C), std::move(a), std::move(b), L, U};
        break;
    }
    return out;
}

ParsedInstance parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    return parse_instance(in);
}

std::string emit(const CoveringInstance& inst) {
    std::ostringstream os;
    prec(os) << "covering " << inst.C.rows() << ' ' << inst.C.cols() << ' ' << inst.lambda << '\n';
    emit_matrix(os, inst.C, 'C');
    return os.str();
}

std::string emit(const PackingInstance& inst) {
    std::ostringstream os;
    prec(os) << "packing " << inst.P.rows() << ' ' << inst.P.cols() << ' ' << inst.lambda << '\n';
    emit_matrix(os, inst.P, 'P');
    return os.str();
}

std::string emit(const PositiveInstance& inst) {
    std::ostringstream os;
    prec(os) << "positive " << inst.P.rows() << ' ' << inst.C.rows() << ' ' << inst.P.cols() << '\n';
    os << "bounds " << inst.L << ' ' << inst.U << '\n';
    emit_matrix(os, inst.P, 'P');
    emit_matrix(os, inst.C, 'C');
    return os.str();
}

std::string emit(const GeneralInstance& inst) {
    std::ostringstream os;
    prec(os) << "general " << inst.C.rows() << ' ' << inst.C.cols() << '\n';
    os << "bounds " << inst.L << ' ' << inst.U << '\n';
    for (std::size_t j = 0; j < inst.a.size(); ++j) os << "a " << j << ' ' << inst.a[j] << '\n';
    for (std::size_t i = 0; i < inst.b.size(); ++i) os << "b " << i << ' ' << inst.b[i] << '\n';
    emit_matrix(os, inst.C, 'C');
    return os.str();
}

std::vector<UpdateEvent> parse_updates(std::istream& in, UpdateDirection dir) {
    Reader r{in};
    std::istringstream ss;
    std::string tag;
    std::vector<UpdateEvent> out;
    const bool restrict_ = dir == UpdateDirection::Restricting;
    while (r.next(ss, tag)) {
        if (tag != "set") parse_fail(r.line_no, "update lines start with 'set'");
        std::string what;
        if (!(ss >> what)) parse_fail(r.line_no, "missing update target");
        UpdateEvent ev{};
        if (what == "C" || (what == "P" && !restrict_)) {
            read_fields(ss, r.line_no, ev.row, ev.col, ev.new_value);
            ev.kind = what == "P" ? UpdateKind::RelaxPackingEntry
                    : restrict_   ? UpdateKind::RestrictCoveringEntry
                                  : UpdateKind::RelaxCoveringEntry;
        } else if (what == "a" && restrict_) {
            read_fields(ss, r.line_no, ev.col, ev.new_value);
            ev.kind = UpdateKind::TranslateObjective;
        } else if (what == "b" && restrict_) {
            read_fields(ss, r.line_no, ev.row, ev.new_value);
            ev.kind = UpdateKind::TranslateCovering;
        } else if (what == "rhsP" && !restrict_) {
            read_fields(ss, r.line_no, ev.row, ev.new_value);
            ev.kind = UpdateKind::TranslatePacking;
        } else if (what == "rhsC" && !restrict_) {
            read_fields(ss, r.line_no, ev.row, ev.new_value);
            ev.kind = UpdateKind::TranslateCovering;
        } else {
            parse_fail(r.line_no, "update target '" + what + "' not allowed in this stream");
        }
        if (!(ev.new_value >= 0.0)) parse_fail(r.line_no, "negative or NaN value");
        out.push_back(ev);
    }
    return out;
}

std::vector<UpdateEvent> parse_updates_file(const std::string& path, UpdateDirection dir) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    return parse_updates(in, dir);
}

std::string emit_updates(std::span<const UpdateEvent> events, UpdateDirection dir) {
    std::ostringstream os;
    prec(os);
    for (const auto& ev : events) {
        switch (ev.kind) {
        case UpdateKind::RestrictCoveringEntry:
        case UpdateKind::RelaxCoveringEntry:
            os << "set C " << ev.row << ' ' << ev.col << ' ' << ev.new_value << '\n';
            break;
        case UpdateKind::RelaxPackingEntry:
            os << "set P " << ev.row << ' ' << ev.col << ' ' << ev.new_value << '\n';
            break;
        case UpdateKind::TranslateObjective:
            os << "set a " << ev.col << ' ' << ev.new_value << '\n';
            break;
        case UpdateKind::TranslatePacking:
            os << "set rhsP " << ev.row << ' ' << ev.new_value << '\n';
            break;
        case UpdateKind::TranslateCovering:
            os << (dir == UpdateDirection::Restricting ? "set b " : "set rhsC ") << ev.row << ' ' << ev.new_value << '\n';
            break;
        }
    }
    return os.str();
}

}  // namespace mwu
