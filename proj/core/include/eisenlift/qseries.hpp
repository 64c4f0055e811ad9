#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "eisenlift/cyclotomic.hpp"

namespace eisenlift {

/// Truncated formal expansion in powers of q^(1/N) with CycElem coefficients.
/// A term (e -> c) means c * q^(e/N). All stored e satisfy 0 <= e < prec and
/// no stored coefficient is zero; coefficients with e >= prec are unknown.
class QSeries {
 public:
  QSeries(int level, std::int64_t prec);
  static QSeries constant(int level, const CycElem& c, std::int64_t prec);
  static QSeries constant(int level, const Rat& c, std::int64_t prec);

  int level() const { return level_; }
  std::int64_t prec() const { return prec_; }
  const std::map<std::int64_t, CycElem>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// Smallest stored exponent numerator (0 for the zero series).
  std::int64_t valuation() const { return terms_.empty() ? 0 : terms_.begin()->first; }

  /// Coefficient of q^(e/N); throws if e >= prec (unknown territory).
  CycElem coeff(std::int64_t e) const;

  void set_coeff(std::int64_t e, const CycElem& c);
  void add_to_coeff(std::int64_t e, const CycElem& c);

  QSeries operator-() const;
  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  QSeries& operator+=(const QSeries& o) { return *this = *this + o; }
  QSeries& operator-=(const QSeries& o) { return *this = *this - o; }

  QSeries scaled(const Rat& r) const;
  QSeries scaled(const CycElem& c) const;
  /// Exponent-numerator scaling e -> e*k, prec -> prec*k (tau -> k*tau relabeling).
  QSeries scale_exponents(std::int64_t k) const;
  /// Truncate to a smaller precision.
  QSeries truncated(std::int64_t prec) const;

  /// Multiplicative inverse up to prec; requires nonzero constant term.
  QSeries invert() const;
  /// q d/dq: c*q^(e/N) -> (e/N)*c*q^(e/N).
  QSeries q_ddq() const;

  /// Equality of all coefficients up to min(prec_a, prec_b).
  static bool equal_up_to_min_prec(const QSeries& a, const QSeries& b);
  /// First exponent where the two differ (up to min prec), or -1 if none.
  static std::int64_t first_mismatch(const QSeries& a, const QSeries& b);

  bool rational_coefficients() const;

  /// {"N":..., "prec":..., "terms":[{"e":..., "c":[...]}...]} sorted by e.
  std::string to_json() const;
  static QSeries from_json(const std::string& text);

  /// Human-readable rendering, e.g. "3/10 + q + q^2 + q^3".
  std::string to_text() const;

 private:
  int level_;
  std::int64_t prec_;
  std::map<std::int64_t, CycElem> terms_;
};

inline QSeries add(const QSeries& a, const QSeries& b) { return a + b; }
inline QSeries mul(const QSeries& a, const QSeries& b) { return a * b; }
inline QSeries invert(const QSeries& a) { return a.invert(); }
inline QSeries q_ddq(const QSeries& a) { return a.q_ddq(); }

}  // namespace eisenlift
