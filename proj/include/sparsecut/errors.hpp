#ifndef SPARSECUT_ERRORS_HPP
#define SPARSECUT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sparsecut {

// Domain errors carry a stable machine-readable code alongside the message.
// The CLI maps them to structured JSON on stderr and exit code 1.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define SPARSECUT_DEFINE_ERROR(Name)                         \
    class Name : public DomainError {                        \
    public:                                                  \
        explicit Name(const std::string& msg)                \
            : DomainError(#Name, msg) {}                     \
    }

SPARSECUT_DEFINE_ERROR(NoDemandSeparated);
SPARSECUT_DEFINE_ERROR(InvalidParams);
SPARSECUT_DEFINE_ERROR(TooManyDemands);
SPARSECUT_DEFINE_ERROR(IndexOutOfRange);
SPARSECUT_DEFINE_ERROR(Exceeded);
SPARSECUT_DEFINE_ERROR(Infeasible);
SPARSECUT_DEFINE_ERROR(Unbounded);
SPARSECUT_DEFINE_ERROR(DegenerateDenominator);
SPARSECUT_DEFINE_ERROR(PairNotCovered);
SPARSECUT_DEFINE_ERROR(PairNotConnected);
SPARSECUT_DEFINE_ERROR(InconsistencyDetected);
SPARSECUT_DEFINE_ERROR(ZeroProbabilityCondition);
SPARSECUT_DEFINE_ERROR(AllRunsDegenerate);
SPARSECUT_DEFINE_ERROR(EndpointNotInBag);
SPARSECUT_DEFINE_ERROR(TooLarge);
SPARSECUT_DEFINE_ERROR(TraceFailed);
SPARSECUT_DEFINE_ERROR(ParseError);

#undef SPARSECUT_DEFINE_ERROR

} // namespace sparsecut

#endif
