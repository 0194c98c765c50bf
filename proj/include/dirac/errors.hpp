#pragma once

#include <stdexcept>
#include <string>

namespace dirac {

enum class Errc {
  InvalidRootSystem,
  OddNoncompactDimension,
  NonDefiniteForm,
  NonDominantWeight,
  NotInvariant,
  CoverMismatch,
  LatticeMismatch,
  InvalidParameter,
  SingularOnCompactWall,
  UnboundedProvider,
  ShapeMismatch,
  NotAComplex,
  DiagramNotCommutative,
  SequenceNotExact,
  HypothesisSTnotZero,
  SemisimplicityFails,
  IdentityFailed,
  CliffordRelationFailed,
  UnsupportedDatum,
  DatumLoadError,
  UsageError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidRootSystem: return "InvalidRootSystem";
    case Errc::OddNoncompactDimension: return "OddNoncompactDimension";
    case Errc::NonDefiniteForm: return "NonDefiniteForm";
    case Errc::NonDominantWeight: return "NonDominantWeight";
    case Errc::NotInvariant: return "NotInvariant";
    case Errc::CoverMismatch: return "CoverMismatch";
    case Errc::LatticeMismatch: return "LatticeMismatch";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::SingularOnCompactWall: return "SingularOnCompactWall";
    case Errc::UnboundedProvider: return "UnboundedProvider";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NotAComplex: return "NotAComplex";
    case Errc::DiagramNotCommutative: return "DiagramNotCommutative";
    case Errc::SequenceNotExact: return "SequenceNotExact";
    case Errc::HypothesisSTnotZero: return "HypothesisSTnotZero";
    case Errc::SemisimplicityFails: return "SemisimplicityFails";
    case Errc::IdentityFailed: return "IdentityFailed";
    case Errc::CliffordRelationFailed: return "CliffordRelationFailed";
    case Errc::UnsupportedDatum: return "UnsupportedDatum";
    case Errc::DatumLoadError: return "DatumLoadError";
    case Errc::UsageError: return "UsageError";
  }
  return "UnknownError";
}

// Thrown by every operation whose contract names an error condition.
class DomainError : public std::runtime_error {
 public:
  DomainError(Errc code, const std::string& what_arg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what_arg), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw DomainError(code, msg); }

inline void require(bool cond, Errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace dirac
