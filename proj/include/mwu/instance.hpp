#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mwu/errors.hpp"
#include "mwu/matrix.hpp"

namespace mwu {

// Cx >= 1 with entries of C in [0, lambda]; also used for the packing view P.
struct CoveringInstance {
    SparseNonnegMatrix C;
    double lambda = 1.0;
    double eps = 0.1;
};

struct PackingInstance {
    SparseNonnegMatrix P;
    double lambda = 1.0;
    double eps = 0.1;
};

// minimise a^T x subject to Cx >= b, x >= 0.
struct GeneralInstance {
    SparseNonnegMatrix C;
    std::vector<double> a;
    std::vector<double> b;
    double L = 1.0;
    double U = 1.0;
};

// Find x >= 0 with Px <= 1 and Cx >= 1.
struct PositiveInstance {
    SparseNonnegMatrix P;
    SparseNonnegMatrix C;
    double L = 1.0;
    double U = 1.0;
    double eps = 1.0 / 200.0;
};

enum class UpdateKind {
    RestrictCoveringEntry,
    RelaxCoveringEntry,
    RelaxPackingEntry,
    TranslatePacking,
    TranslateCovering,
    TranslateObjective,
};

struct UpdateEvent {
    UpdateKind kind;
    std::size_t row = 0;
    std::size_t col = 0;  // also the column of a TranslateObjective
    double new_value = 0.0;
};

enum class OutcomeTag {
    CoveringPrimal,
    PackingDual,
    PackingPrimal,
    CoveringDual,
    PositiveSolution,
    Infeasible,
    Null,
};

const char* to_string(OutcomeTag tag);

struct Outcome {
    OutcomeTag tag = OutcomeTag::Null;
    std::vector<double> vec;
};

struct ValidationIssue {
    ErrorKind kind;
    std::string detail;
};

std::vector<ValidationIssue> validate(const CoveringInstance& inst);
std::vector<ValidationIssue> validate(const PackingInstance& inst);
std::vector<ValidationIssue> validate(const GeneralInstance& inst);
std::vector<ValidationIssue> validate(const PositiveInstance& inst);

// Throws NonMonotoneUpdate / IndexOutOfRange. Entry kinds only.
void apply_update(SparseNonnegMatrix& m, const UpdateEvent& ev);

// Rounds for the whack templates: ceil(lambda * ln(max(n, 2)) / eps^2).
std::int64_t rounds_for(std::size_t n, double lambda, double eps);

// Bounds for check_certificate. Absolute tolerance is applied on top.
struct CertificateSlack {
    double primal_mass_lo = 1.0;
    double primal_mass_hi = 1.0;
    double primal_cover_lo = 0.9;   // CoveringPrimal: Cx >= this
    double primal_pack_hi = 1.1;    // PackingPrimal: Px <= this
    double dual_mass_lo = 1.0;
    double dual_mass_hi = 1.0;
    double dual_pack_hi = 1.4;      // PackingDual: C^T y <= this
    double dual_cover_lo = 0.6;     // CoveringDual: P^T y >= this
    double tol = 1e-9;

    static CertificateSlack static_template(double eps);
    static CertificateSlack maintained(double eps);
    static CertificateSlack extracted_dual(double eps);
};

struct CertificateReport {
    bool ok = true;
    std::string what;         // empty when ok
    std::size_t worst = 0;    // offending row / column
    double residual = 0.0;    // offending value
};

CertificateReport check_certificate(const SparseNonnegMatrix& C, const Outcome& out,
                                    const CertificateSlack& slack);
CertificateReport check_certificate(const CoveringInstance& inst, const Outcome& out);
CertificateReport check_certificate(const PackingInstance& inst, const Outcome& out);
// PositiveSolution: Px <= (1 + pack_factor*eps), Cx >= 1.
CertificateReport check_certificate(const PositiveInstance& inst, const Outcome& out,
                                    double pack_factor = 200.0);

}  // namespace mwu
