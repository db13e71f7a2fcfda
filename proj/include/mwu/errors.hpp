#pragma once

#include <stdexcept>
#include <string>

namespace mwu {

enum class ErrorKind {
    NegativeEntry,
    EntryAboveLambda,
    EpsOutOfRange,
    EmptyMatrix,
    EntryOutOfBounds,
    NonMonotoneUpdate,
    IndexOutOfRange,
    PreconditionViolated,
    UpdateAfterTerminal,
    RowAfterTermination,
    StreamExhaustedMidRow,
    ZeroScaleFactor,
    UnboundedCost,
    NotCheap,
    NotInfeasibleYet,
    TooLarge,
    ParseError,
    CertificateViolation,
    InvalidSelection,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace mwu
