#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>

namespace eisenlift {

using Int = boost::multiprecision::cpp_int;

/// Exact rational number, always in lowest terms with positive denominator.
/// Zero is 0/1. Serializes as "num/den".
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
  Rat(const Int& n) : v_(n) {}
  template <class Tag, class A1, class A2, class A3, class A4>
  Rat(const boost::multiprecision::detail::expression<Tag, A1, A2, A3, A4>& e) : v_(Int(e)) {}
  Rat(const Int& num, const Int& den) : v_(checked(num, den)) {}
  Rat(long long num, long long den) : Rat(Int(num), Int(den)) {}

  Int num() const { return boost::multiprecision::numerator(v_); }
  Int den() const { return boost::multiprecision::denominator(v_); }
  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return den() == 1; }
  int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

  Rat operator-() const { return Rat(rational(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.v_ == 0) throw std::invalid_argument("Rat: division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  /// "num/den" in lowest terms, e.g. "-3/10", "0/1".
  std::string str() const { return num().str() + "/" + den().str(); }

  static Rat parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  }

 private:
  using rational = boost::multiprecision::cpp_rational;
  explicit Rat(rational v) : v_(std::move(v)) {}
  static rational checked(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    return den < 0 ? rational(-num, -den) : rational(num, den);
  }
  rational v_;
};

/// Fractional part {x} in [0, 1).
inline Rat frac_part(const Rat& x) {
  Int fl = x.num() / x.den();
  if (x.num() < 0 && fl * x.den() != x.num()) fl -= 1;
  return x - Rat(fl);
}

/// Bernoulli polynomial B_k evaluated at x in [0,1); only k = 1, 2 arise here.
/// B_1(x) = x - 1/2, B_2(x) = x^2 - x + 1/6.
inline Rat bernoulli(int k, const Rat& x) {
  if (x < Rat(0) || x >= Rat(1)) throw std::invalid_argument("bernoulli: x outside [0,1)");
  switch (k) {
    case 1:
      return x - Rat(1, 2);
    case 2:
      return x * x - x + Rat(1, 6);
    default:
      throw std::invalid_argument("bernoulli: k must be 1 or 2");
  }
}

/// Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a,b) > 0.
inline std::tuple<Int, Int, Int> extended_gcd(const Int& a, const Int& b) {
  if (a == 0 && b == 0) throw std::invalid_argument("extended_gcd(0, 0)");
  Int old_r = a, r = b;
  Int old_x = 1, x = 0;
  Int old_y = 0, y = 1;
  while (r != 0) {
    Int q = old_r / r;
    if ((old_r % r != 0) && ((old_r < 0) != (r < 0))) q -= 1;  // floor division
    old_r -= q * r;
    std::swap(old_r, r);
    old_x -= q * x;
    std::swap(old_x, x);
    old_y -= q * y;
    std::swap(old_y, y);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_x = -old_x;
    old_y = -old_y;
  }
  return {old_r, old_x, old_y};
}

/// a mod m reduced into [0, m), m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

inline long long mod_floor_ll(long long a, long long m) {
  long long r = a % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace eisenlift
