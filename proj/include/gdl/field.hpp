#pragma once

#include <cstdint>
#include <string>

#include "gdl/arith.hpp"

namespace gdl {

/// The rationals, exact.
struct RationalField {
  using Elem = Rational;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(std::int64_t v) const { return Elem(v); }
  Elem add(const Elem& x, const Elem& y) const { return x + y; }
  Elem sub(const Elem& x, const Elem& y) const { return x - y; }
  Elem mul(const Elem& x, const Elem& y) const { return x * y; }
  Elem neg(const Elem& x) const { return -x; }
  Elem inv(const Elem& x) const {
    if (x == 0) throw std::domain_error("division by zero in Q");
    return Elem(1) / x;
  }
  bool is_zero(const Elem& x) const { return x == 0; }
  std::string str(const Elem& x) const { return to_string(x); }
  bool operator==(const RationalField&) const = default;
};

/// Prime field F_p with residues stored in [0, p).
struct PrimeField {
  using Elem = std::int64_t;
  std::int64_t p = 2;

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p; }
  Elem from_int(std::int64_t v) const { return mod(v, p); }
  Elem add(Elem x, Elem y) const { return mod(x + y, p); }
  Elem sub(Elem x, Elem y) const { return mod(x - y, p); }
  Elem mul(Elem x, Elem y) const { return mul_mod(x, y, p); }
  Elem neg(Elem x) const { return x == 0 ? 0 : p - x; }
  Elem inv(Elem x) const { return inv_mod(x, p).value(); }
  bool is_zero(Elem x) const { return x == 0; }
  std::string str(Elem x) const { return std::to_string(x); }
  bool operator==(const PrimeField&) const = default;
};

}  // namespace gdl
