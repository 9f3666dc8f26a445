#include "gdl/arith.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace gdl {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::SingularCurve: return "SingularCurve";
    case Errc::PointNotOnCurve: return "PointNotOnCurve";
    case Errc::BadReduction: return "BadReduction";
    case Errc::ModulusMismatch: return "ModulusMismatch";
    case Errc::EnumerationTooLarge: return "EnumerationTooLarge";
    case Errc::NotSaturated: return "NotSaturated";
    case Errc::RankDeficientInput: return "RankDeficientInput";
    case Errc::NotUnits: return "NotUnits";
    case Errc::NonMaximalOrder: return "NonMaximalOrder";
    case Errc::TorsionPoint: return "TorsionPoint";
    case Errc::ModelTooLarge: return "ModelTooLarge";
    case Errc::NoMatch: return "NoMatch";
    case Errc::KummerDeficient: return "KummerDeficient";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::int64_t mod(const BigInt& a, std::int64_t n) {
  BigInt r = a % n;
  if (r < 0) r += n;
  return static_cast<std::int64_t>(r);
}

std::int64_t pow_mod(std::int64_t base, std::uint64_t exp, std::int64_t n) {
  std::int64_t result = 1 % n;
  base = mod(base, n);
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, n);
    base = mul_mod(base, base, n);
    exp >>= 1U;
  }
  return result;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

ResidueClass::ResidueClass(std::int64_t value, std::int64_t modulus) : modulus_(modulus) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  value_ = mod(value, modulus);
}

bool ResidueClass::is_unit() const { return std::gcd(value_, modulus_) == 1; }

ResidueClass ResidueClass::inverse() const { return inv_mod(value_, modulus_); }

ResidueClass ResidueClass::operator+(const ResidueClass& o) const {
  if (o.modulus_ != modulus_) throw Error(Errc::ModulusMismatch, "residue moduli differ");
  return {value_ + o.value_, modulus_};
}

ResidueClass ResidueClass::operator-(const ResidueClass& o) const {
  if (o.modulus_ != modulus_) throw Error(Errc::ModulusMismatch, "residue moduli differ");
  return {value_ - o.value_, modulus_};
}

ResidueClass ResidueClass::operator*(const ResidueClass& o) const {
  if (o.modulus_ != modulus_) throw Error(Errc::ModulusMismatch, "residue moduli differ");
  return {mul_mod(value_, o.value_, modulus_), modulus_};
}

ResidueClass ResidueClass::operator-() const { return {-value_, modulus_}; }

ResidueClass inv_mod(std::int64_t a, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("modulus must be positive");
  // extended Euclid on (a mod n, n)
  std::int64_t old_r = mod(a, n), r = n;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  if (old_r != 1 && n != 1) {
    throw Error(Errc::NotInvertible,
                std::to_string(a) + " is not invertible modulo " + std::to_string(n));
  }
  return {old_s, n};
}

ResidueClass inv_mod(const BigInt& a, std::int64_t n) { return inv_mod(mod(a, n), n); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  auto mulm = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
  };
  auto powm = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1U) r = mulm(r, b);
      b = mulm(b, b);
      e >>= 1U;
    }
    return r;
  };
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powm(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulm(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> sieve(static_cast<std::size_t>(bound) + 1, true);
  sieve[0] = sieve[1] = false;
  for (std::int64_t i = 2; i * i <= bound; ++i) {
    if (!sieve[i]) continue;
    for (std::int64_t j = i * i; j <= bound; j += i) sieve[j] = false;
  }
  for (std::int64_t i = 2; i <= bound; ++i)
    if (sieve[i]) out.push_back(i);
  return out;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_nonzero_square(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) return false;
  if (p == 2) return true;
  return pow_mod(a, static_cast<std::uint64_t>((p - 1) / 2), p) == 1;
}

Rational parse_rational(const std::string& text) {
  auto trim = [](std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
  };
  auto parse_int = [](const std::string& s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start || !std::all_of(s.begin() + static_cast<long>(start), s.end(),
                                          [](unsigned char c) { return std::isdigit(c); })) {
      throw Error(Errc::ParseError, "not an integer: '" + s + "'");
    }
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  };
  std::string t = trim(text);
  auto slash = t.find('/');
  if (slash == std::string::npos) return Rational(parse_int(t));
  BigInt num = parse_int(trim(t.substr(0, slash)));
  BigInt den = parse_int(trim(t.substr(slash + 1)));
  if (den == 0) throw Error(Errc::ParseError, "zero denominator in '" + text + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace gdl
