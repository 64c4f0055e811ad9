#pragma once

#include <vector>

#include "eisenlift/rat.hpp"

namespace eisenlift {

int euler_phi(int n);

/// Coefficients of the N-th cyclotomic polynomial Phi_N (monic, ascending
/// degree), computed by exact division of x^N - 1 by Phi_d over proper
/// divisors d | N. Cached per level; the cache fill is idempotent and
/// thread-safe.
const std::vector<Rat>& cyclotomic_poly(int n);

/// Element of Q(zeta_N) in the canonical power basis 1, z, ..., z^(phi(N)-1)
/// modulo Phi_N. Equality is coefficient equality.
class CycElem {
 public:
  explicit CycElem(int level);
  CycElem(int level, const Rat& value);
  CycElem(int level, std::vector<Rat> coeffs);  // reduced internally if too long

  static CycElem zeta_pow(int level, long long e);

  int level() const { return level_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Degree-0 coefficient; throws unless is_rational().
  Rat rat_value() const;

  CycElem operator-() const;
  CycElem& operator+=(const CycElem& o);
  CycElem& operator-=(const CycElem& o);
  friend CycElem operator+(CycElem a, const CycElem& b) { return a += b; }
  friend CycElem operator-(CycElem a, const CycElem& b) { return a -= b; }
  friend CycElem operator*(const CycElem& a, const CycElem& b);
  CycElem& operator*=(const CycElem& o) { return *this = *this * o; }
  CycElem& operator*=(const Rat& r);
  friend CycElem operator*(CycElem a, const Rat& r) { return a *= r; }
  friend CycElem operator*(const Rat& r, CycElem a) { return a *= r; }

  /// Multiplicative inverse in the field Q(zeta_N); throws on zero.
  CycElem inverse() const;
  friend CycElem operator/(const CycElem& a, const CycElem& b) { return a * b.inverse(); }

  friend bool operator==(const CycElem& a, const CycElem& b) {
    return a.level_ == b.level_ && a.c_ == b.c_;
  }
  friend bool operator!=(const CycElem& a, const CycElem& b) { return !(a == b); }

  std::vector<std::string> to_strings() const;
  static CycElem from_strings(int level, const std::vector<std::string>& parts);
  std::string str() const;

 private:
  int level_;
  std::vector<Rat> c_;
};

inline CycElem cyc_mul(const CycElem& a, const CycElem& b) { return a * b; }
inline CycElem zeta_pow(int level, long long e) { return CycElem::zeta_pow(level, e); }

}  // namespace eisenlift
