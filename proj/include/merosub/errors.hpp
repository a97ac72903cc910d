#pragma once

#include <stdexcept>
#include <string>

namespace merosub {

// Anything derived from NumericError means a numeric degeneracy aborted the
// computation; the CLI maps these to exit code 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments / unknown names; the CLI maps these to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateDivision : NumericError {
    double denom_magnitude;
    explicit DegenerateDivision(double mag)
        : NumericError("series division by near-zero constant term, |s2(0)| = " +
                       std::to_string(mag)),
          denom_magnitude(mag) {}
};

struct BranchRisk : NumericError {
    explicit BranchRisk(double dist)
        : NumericError("power base constant term is " + std::to_string(dist) +
                       " away from 1; principal branch not anchored") {}
};

struct NotSchwarz : NumericError {
    explicit NotSchwarz(const std::string& why) : NumericError("not a Schwarz function: " + why) {}
};

struct DomainError : NumericError {
    explicit DomainError(const std::string& why) : NumericError("evaluation outside domain: " + why) {}
};

struct OracleUnstable : NumericError {
    double error_estimate;
    explicit OracleUnstable(double est)
        : NumericError("quadrature oracle did not converge, estimated error " +
                       std::to_string(est)),
          error_estimate(est) {}
};

struct TooClose : NumericError {
    explicit TooClose(double dist)
        : NumericError("curve passes within " + std::to_string(dist) + " of the query point") {}
};

struct DegenerateDerivative : NumericError {
    explicit DegenerateDerivative(double mag)
        : NumericError("derivative magnitude " + std::to_string(mag) + " below floor") {}
};

struct DegenerateBase : NumericError {
    explicit DegenerateBase(double mag)
        : NumericError("theorem base expression degenerate, constant magnitude " +
                       std::to_string(mag)) {}
};

struct SpecError : UsageError {
    explicit SpecError(const std::string& why) : UsageError("invalid family spec: " + why) {}
};

struct GeneratorStuck : NumericError {
    explicit GeneratorStuck(const std::string& why) : NumericError("generator stuck: " + why) {}
};

} // namespace merosub
