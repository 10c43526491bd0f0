#ifndef SRB_ERRORS_HPP
#define SRB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace srb {

// Validation errors: bad parameters, malformed config. CLI exit code 2.
struct ValidationError : std::runtime_error {
    std::string code;
    ValidationError(std::string c, const std::string& msg)
        : std::runtime_error(msg), code(std::move(c)) {}
};

// Numerical failures: iteration caps, lost structure. CLI exit code 3.
struct NumericalError : std::runtime_error {
    std::string code;
    NumericalError(std::string c, const std::string& msg)
        : std::runtime_error(msg), code(std::move(c)) {}
};

struct InvalidParams : ValidationError {
    explicit InvalidParams(const std::string& msg) : ValidationError("InvalidParams", msg) {}
};
struct GridMismatch : ValidationError {
    explicit GridMismatch(const std::string& msg) : ValidationError("GridMismatch", msg) {}
};

struct NewtonDivergence : NumericalError {
    explicit NewtonDivergence(const std::string& msg) : NumericalError("NewtonDivergence", msg) {}
};
struct BranchCollision : NumericalError {
    explicit BranchCollision(const std::string& msg) : NumericalError("BranchCollision", msg) {}
};
struct SingularMatrix : NumericalError {
    explicit SingularMatrix(const std::string& msg) : NumericalError("SingularMatrix", msg) {}
};
struct NoConvergence : NumericalError {
    explicit NoConvergence(const std::string& msg) : NumericalError("NoConvergence", msg) {}
};
struct NoGap : NumericalError {
    explicit NoGap(const std::string& msg) : NumericalError("NoGap", msg) {}
};
struct LinearSolveFailure : NumericalError {
    explicit LinearSolveFailure(const std::string& msg) : NumericalError("LinearSolveFailure", msg) {}
};
struct StepTooSmall : NumericalError {
    explicit StepTooSmall(const std::string& msg) : NumericalError("StepTooSmall", msg) {}
};
struct InfeasibleMeasures : NumericalError {
    explicit InfeasibleMeasures(const std::string& msg) : NumericalError("InfeasibleMeasures", msg) {}
};
struct WitnessNotFound : NumericalError {
    explicit WitnessNotFound(const std::string& msg) : NumericalError("WitnessNotFound", msg) {}
};
struct NotHyperbolic : NumericalError {
    explicit NotHyperbolic(const std::string& msg) : NumericalError("NotHyperbolic", msg) {}
};
struct DegenerateFit : NumericalError {
    explicit DegenerateFit(const std::string& msg) : NumericalError("DegenerateFit", msg) {}
};

} // namespace srb

#endif
