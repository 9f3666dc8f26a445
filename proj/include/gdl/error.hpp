#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gdl {

enum class Errc {
  NotInvertible,
  SingularCurve,
  PointNotOnCurve,
  BadReduction,
  ModulusMismatch,
  EnumerationTooLarge,
  NotSaturated,
  RankDeficientInput,
  NotUnits,
  NonMaximalOrder,
  TorsionPoint,
  ModelTooLarge,
  NoMatch,
  KummerDeficient,
  ParseError,
};

std::string_view errc_name(Errc code) noexcept;

/// Domain error carrying a machine-readable kind. Everything the CLI reports
/// with exit status 1 is one of these.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace gdl
