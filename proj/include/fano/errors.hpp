#ifndef FANO_ERRORS_HPP
#define FANO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fano {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input could not be parsed or violates a precondition of a constructor.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

// Arguments belong to different fields / different genus / wrong dimension.
struct MismatchError : Error {
    explicit MismatchError(const std::string& msg) : Error("mismatch: " + msg) {}
};

struct SingularQuadric : Error {
    explicit SingularQuadric(const std::string& msg) : Error("singular quadric: " + msg) {}
};

// Carries a textual witness (a point in the singular locus, or the fiber it was found in).
struct SingularCurve : Error {
    explicit SingularCurve(const std::string& witness)
        : Error("singular curve: witness " + witness) {}
};

struct WeilBoundViolation : Error {
    WeilBoundViolation(int m, long long count)
        : Error("Weil bound violated at extension degree " + std::to_string(m) +
                ": N_m = " + std::to_string(count)) {}
};

// A sampled configuration is non-generic (collinear points, singular conic
// section, non-reduced residual). Callers resample within their budget.
struct DegenerateConfiguration : Error {
    explicit DegenerateConfiguration(const std::string& msg)
        : Error("degenerate configuration: " + msg) {}
};

struct NotStabilized : Error {
    explicit NotStabilized(int ext_bound)
        : Error("secant count did not stabilize within extension bound " +
                std::to_string(ext_bound)) {}
};

struct ResourceBound : Error {
    explicit ResourceBound(const std::string& msg) : Error("resource bound exceeded: " + msg) {}
};

// Internal consistency failure; indicates a bug, not bad input.
struct IdentityFailure : Error {
    explicit IdentityFailure(const std::string& msg) : Error("identity failure: " + msg) {}
};

}  // namespace fano

#endif
