#pragma once

#include <stdexcept>
#include <string>

namespace painlax {

enum class ErrorCode {
    PoleEncountered,
    StepLimitExceeded,
    NonFiniteRhs,
    InsufficientSamples,
    NonUniformSpacing,
    DefectiveMatrix,
    DegenerateLeadingCoefficient,
    SingularEvaluation,
    SingularParametrization,
    BranchCutCrossing,
    RealityViolated,
    DegenerateDenominator,
    ZeroDelta,
    DegenerateBranch,
    DegenerateEigenvalues,
    NonGenericState,
    ZeroColumnViolation,
    NonSingularRhs,
    NotFirstOrderPole,
    IllConditionedTransport,
    MovingPoleCollision,
    ConfigError,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::PoleEncountered: return "PoleEncountered";
        case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
        case ErrorCode::NonFiniteRhs: return "NonFiniteRhs";
        case ErrorCode::InsufficientSamples: return "InsufficientSamples";
        case ErrorCode::NonUniformSpacing: return "NonUniformSpacing";
        case ErrorCode::DefectiveMatrix: return "DefectiveMatrix";
        case ErrorCode::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
        case ErrorCode::SingularEvaluation: return "SingularEvaluation";
        case ErrorCode::SingularParametrization: return "SingularParametrization";
        case ErrorCode::BranchCutCrossing: return "BranchCutCrossing";
        case ErrorCode::RealityViolated: return "RealityViolated";
        case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorCode::ZeroDelta: return "ZeroDelta";
        case ErrorCode::DegenerateBranch: return "DegenerateBranch";
        case ErrorCode::DegenerateEigenvalues: return "DegenerateEigenvalues";
        case ErrorCode::NonGenericState: return "NonGenericState";
        case ErrorCode::ZeroColumnViolation: return "ZeroColumnViolation";
        case ErrorCode::NonSingularRhs: return "NonSingularRhs";
        case ErrorCode::NotFirstOrderPole: return "NotFirstOrderPole";
        case ErrorCode::IllConditionedTransport: return "IllConditionedTransport";
        case ErrorCode::MovingPoleCollision: return "MovingPoleCollision";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace painlax
