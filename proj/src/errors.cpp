#include "spinlab/errors.hpp"

namespace spinlab {

const char* err_name(Err code) {
  switch (code) {
    case Err::DuplicateEdge: return "DuplicateEdge";
    case Err::SelfLoop: return "SelfLoop";
    case Err::VertexOutOfRange: return "VertexOutOfRange";
    case Err::InfeasibleFamily: return "InfeasibleFamily";
    case Err::RootPinned: return "RootPinned";
    case Err::TreeTooLarge: return "TreeTooLarge";
    case Err::EdgeNotInGraph: return "EdgeNotInGraph";
    case Err::NonPositiveTilt: return "NonPositiveTilt";
    case Err::ZeroField: return "ZeroField";
    case Err::TooLarge: return "TooLarge";
    case Err::EmptySupport: return "EmptySupport";
    case Err::NotAbsolutelyContinuous: return "NotAbsolutelyContinuous";
    case Err::InvalidTilt: return "InvalidTilt";
    case Err::NotReversible: return "NotReversible";
    case Err::Nonconvergent: return "Nonconvergent";
    case Err::ZeroGap: return "ZeroGap";
    case Err::NotAntiferromagnetic: return "NotAntiferromagnetic";
    case Err::NoCriticalPoint: return "NoCriticalPoint";
    case Err::ThetaOutOfRange: return "ThetaOutOfRange";
    case Err::ZeroSlack: return "ZeroSlack";
    case Err::NegativeArgument: return "NegativeArgument";
    case Err::DeltaOutOfRange: return "DeltaOutOfRange";
    case Err::BarBetaTooLarge: return "BarBetaTooLarge";
    case Err::InfeasibleState: return "InfeasibleState";
    case Err::NotFerromagnetic: return "NotFerromagnetic";
    case Err::UpStepTooLarge: return "UpStepTooLarge";
    case Err::LambdaTooLarge: return "LambdaTooLarge";
    case Err::NotCritical: return "NotCritical";
    case Err::HardConstraint: return "HardConstraint";
    case Err::RegimeViolation: return "RegimeViolation";
    case Err::InputsOutOfRegime: return "InputsOutOfRegime";
    case Err::InconsistentPinning: return "InconsistentPinning";
    case Err::NotBipartiteRegular: return "NotBipartiteRegular";
    case Err::IndeterminateLimit: return "IndeterminateLimit";
    case Err::ConfigInvalid: return "ConfigInvalid";
    case Err::IOFailure: return "IOFailure";
  }
  return "UnknownError";
}

}  // namespace spinlab
