#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdl/error.hpp"

namespace gdl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Non-negative remainder of a modulo n (n > 0).
constexpr std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::int64_t mod(const BigInt& a, std::int64_t n);

constexpr std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % n);
}

std::int64_t pow_mod(std::int64_t base, std::uint64_t exp, std::int64_t n);

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);

/// Element of Z/nZ. Value is always reduced into [0, n).
class ResidueClass {
 public:
  ResidueClass(std::int64_t value, std::int64_t modulus);

  std::int64_t value() const noexcept { return value_; }
  std::int64_t modulus() const noexcept { return modulus_; }

  bool is_unit() const;
  ResidueClass inverse() const;

  ResidueClass operator+(const ResidueClass& o) const;
  ResidueClass operator-(const ResidueClass& o) const;
  ResidueClass operator*(const ResidueClass& o) const;
  ResidueClass operator-() const;

  bool operator==(const ResidueClass&) const = default;
  auto operator<=>(const ResidueClass&) const = default;

 private:
  std::int64_t value_;
  std::int64_t modulus_;
};

/// r with a*r = 1 (mod n). Throws Errc::NotInvertible when gcd(a, n) != 1.
ResidueClass inv_mod(std::int64_t a, std::int64_t n);
ResidueClass inv_mod(const BigInt& a, std::int64_t n);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

std::vector<std::int64_t> primes_up_to(std::int64_t bound);

/// Prime factors of n (n >= 1), ascending, without multiplicity.
std::vector<std::int64_t> prime_factors(std::int64_t n);

/// Legendre-style test: is a a nonzero square mod the odd prime p.
bool is_nonzero_square(std::int64_t a, std::int64_t p);

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// Integer square root floor.
std::int64_t isqrt(std::int64_t n);

}  // namespace gdl
