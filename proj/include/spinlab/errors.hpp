#pragma once

#include <stdexcept>
#include <string>

namespace spinlab {

enum class Err {
  DuplicateEdge,
  SelfLoop,
  VertexOutOfRange,
  InfeasibleFamily,
  RootPinned,
  TreeTooLarge,
  EdgeNotInGraph,
  NonPositiveTilt,
  ZeroField,
  TooLarge,
  EmptySupport,
  NotAbsolutelyContinuous,
  InvalidTilt,
  NotReversible,
  Nonconvergent,
  ZeroGap,
  NotAntiferromagnetic,
  NoCriticalPoint,
  ThetaOutOfRange,
  ZeroSlack,
  NegativeArgument,
  DeltaOutOfRange,
  BarBetaTooLarge,
  InfeasibleState,
  NotFerromagnetic,
  UpStepTooLarge,
  LambdaTooLarge,
  NotCritical,
  HardConstraint,
  RegimeViolation,
  InputsOutOfRegime,
  InconsistentPinning,
  NotBipartiteRegular,
  IndeterminateLimit,
  ConfigInvalid,
  IOFailure,
};

const char* err_name(Err code);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Err code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace spinlab
