#pragma once

#include <stdexcept>
#include <string>

namespace cocompact {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define COCOMPACT_ERROR(Name)                                                  \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
    }

COCOMPACT_ERROR(PreconditionViolated);
COCOMPACT_ERROR(NonExactDivision);
COCOMPACT_ERROR(DegreeBoundExceeded);
COCOMPACT_ERROR(ToleranceNotReached);
COCOMPACT_ERROR(IncomparableEntries);
COCOMPACT_ERROR(ZeroEntry);
COCOMPACT_ERROR(NoForm);
COCOMPACT_ERROR(IndecomposabilityViolated);
COCOMPACT_ERROR(InexactPath);
COCOMPACT_ERROR(ModelMismatch);
COCOMPACT_ERROR(NotInLattice);
COCOMPACT_ERROR(SchemaError);
COCOMPACT_ERROR(ClosureViolation);

// Raised when two independent computations that must agree do not. Always a bug.
COCOMPACT_ERROR(InternalInconsistency);

#undef COCOMPACT_ERROR

} // namespace cocompact
