#pragma once

#include <array>
#include <utility>

#include "eisenlift/modsym.hpp"
#include "eisenlift/qseries.hpp"

namespace eisenlift {

/// (t + s*sqrt(disc)) / 2 with integral t, s; used for units on the Pell
/// ladder of a real quadratic order.
struct QuadInt {
  Int t, s;
  Int disc;

  /// Field norm (t^2 - s^2 disc) / 4.
  Rat norm() const { return Rat(t * t - s * s * disc, 4); }
  friend bool operator==(const QuadInt& a, const QuadInt& b) {
    return a.t == b.t && a.s == b.s && a.disc == b.disc;
  }
};

/// Exact element x + y*sqrt(disc) of Q(sqrt(disc)).
struct QuadNum {
  Rat x, y;
  Int disc;

  friend QuadNum operator*(const QuadNum& a, const QuadNum& b) {
    return QuadNum{a.x * b.x + a.y * b.y * Rat(a.disc), a.x * b.y + a.y * b.x, a.disc};
  }
  friend QuadNum operator+(const QuadNum& a, const QuadNum& b) {
    return QuadNum{a.x + b.x, a.y + b.y, a.disc};
  }
  bool is_zero() const { return x.is_zero() && y.is_zero(); }
};

/// Real-quadratic invariants of a hyperbolic matrix in Gamma_1(N).
struct QuadraticData {
  Int D;                      // tr^2 - 4
  std::array<Int, 3> form;    // primitive (A, B, C) from (c, d-a, -b)/content
  Int Delta;                  // form discriminant B^2 - 4AC = D / content^2
  QuadNum nu;                 // fixed point (a - d - sqrt(D)) / (2c)
  QuadInt eps;                // eigenvalue (a + d + sqrt(D)) / 2, norm 1
  QuadInt eps0;               // fundamental totally positive unit, disc Delta
  Int m;                      // least power with +-eps0^m in Gamma_1(N)
  Int k;                      // gamma = gamma_1^k
  bool primitive;             // k == 1

  std::string to_json() const;
};

/// Minimal (t, s) with t, s > 0 and t^2 - Delta s^2 = 4, via the continued
/// fraction of the Pell surd. Delta > 0, = 0 or 1 mod 4, nonsquare.
QuadInt fundamental_unit(const Int& Delta);

QuadraticData quad_invariants(const MatZ& g, int N);

/// Primitive gamma_1 in Gamma_1(N) with gamma = gamma_1^k, k >= 1.
std::pair<MatZ, Int> primitivity(const MatZ& g, int N);

struct DiagonalRestriction {
  QSeries lift;       // lift_cycle(gamma)
  QSeries diagonal;   // lift / k: q-expansion of the diagonal restriction
  QuadraticData data;
};

DiagonalRestriction diagonal_restriction(const MatZ& g, int N, std::int64_t prec);

}  // namespace eisenlift
