#pragma once

#include <stdexcept>
#include <string>

namespace levyh {

enum class ErrorCode {
  NonSymmetricQ,
  NegativeEigenvalue,
  NonIntegrableLevyMeasure,
  AtomAtOrigin,
  DimensionMismatch,
  NonIntegrable,
  NotDominated,
  InfiniteMass,
  HypothesisNotVerified,
  SignedPartNotRepresentable,
  QuadratureFailure,
  MaxSubdivisions,
  EvaluationFailure,
  Unsupported,
  InvalidWitness,
  UnknownName,
  InvalidSpec,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonSymmetricQ: return "NonSymmetricQ";
    case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::NonIntegrableLevyMeasure: return "NonIntegrableLevyMeasure";
    case ErrorCode::AtomAtOrigin: return "AtomAtOrigin";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonIntegrable: return "NonIntegrable";
    case ErrorCode::NotDominated: return "NotDominated";
    case ErrorCode::InfiniteMass: return "InfiniteMass";
    case ErrorCode::HypothesisNotVerified: return "HypothesisNotVerified";
    case ErrorCode::SignedPartNotRepresentable:
      return "SignedPartNotRepresentable";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::MaxSubdivisions: return "MaxSubdivisions";
    case ErrorCode::EvaluationFailure: return "EvaluationFailure";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
  }
  return "Error";
}

/// Library error: a named failure mode plus a human-readable detail string.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace levyh
