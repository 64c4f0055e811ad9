#include "eisenlift/realquad.hpp"

#include <sstream>

#include <json.hpp>

#include "eisenlift/thetalift.hpp"

namespace eisenlift {

namespace {

Int gcd3(const Int& a, const Int& b, const Int& c) {
  using boost::multiprecision::gcd;
  return gcd(gcd(a < 0 ? Int(-a) : a, b < 0 ? Int(-b) : b), c < 0 ? Int(-c) : c);
}

Int isqrt(const Int& n) { return boost::multiprecision::sqrt(n); }

bool is_square(const Int& n, Int* root) {
  if (n < 0) return false;
  Int r = isqrt(n);
  if (r * r == n) {
    *root = r;
    return true;
  }
  return false;
}

// Minimal positive solution of x^2 - d y^2 = 1 by the continued fraction of
// sqrt(d); tests each convergent, so correctness does not hinge on parity
// bookkeeping of the period.
std::pair<Int, Int> pell_one(const Int& d) {
  Int a0 = isqrt(d);
  if (a0 * a0 == d) throw std::invalid_argument("pell_one: d is a square");
  Int P = 0, Q = 1, a = a0;
  Int h_prev = 1, h = a0;
  Int k_prev = 0, k = 1;
  for (int iter = 0; iter < 4000000; ++iter) {
    if (h * h - d * k * k == 1) return {h, k};
    P = a * Q - P;
    Q = (d - P * P) / Q;
    a = (a0 + P) / Q;
    Int h_next = a * h + h_prev;
    Int k_next = a * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  throw std::logic_error("pell_one: period bound exceeded");
}

// Integer cube root candidate of n > 0 (floor).
Int icbrt(const Int& n) {
  if (n <= 0) return 0;
  Int lo = 0, hi = 1;
  while (hi * hi * hi <= n) hi <<= 1;
  while (lo < hi - 1) {
    Int mid = (lo + hi) / 2;
    if (mid * mid * mid <= n)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

// The matrix (t I + s M') / 2 where M' = (a-d, 2b; 2c, d-a) / content is the
// sqrt(Delta) of the order attached to gamma. Integral whenever
// t^2 - Delta s^2 = 4 (parity matches automatically).
MatZ unit_matrix(const MatZ& g, const Int& content, const Int& t, const Int& s) {
  Int ad = (g.a - g.d) / content;
  Int bb = g.b / content;
  Int cc = g.c / content;
  Int diag1 = t + s * ad;
  Int diag2 = t - s * ad;
  if (mod_floor(diag1, 2) != 0 || mod_floor(diag2, 2) != 0)
    throw std::logic_error("unit_matrix: parity violation");
  return MatZ(diag1 / 2, s * bb, s * cc, diag2 / 2);
}

Int max_abs_entry(const MatZ& g) {
  Int m = 0;
  for (const Int* v : {&g.a, &g.b, &g.c, &g.d}) {
    Int av = *v < 0 ? Int(-*v) : *v;
    if (av > m) m = av;
  }
  return m;
}

bool neg_in_gamma1(const MatZ& g, int N) {
  return MatZ(-g.a, -g.b, -g.c, -g.d).in_gamma1(N);
}

struct Ladder {
  MatZ gamma1;  // generator of Gamma_1(N) cap Q(gamma), |eigenvalue| > 1
  Int m;        // gamma1 = +-gamma0^m
};

Ladder unit_ladder(const MatZ& g, int N, const Int& content, const QuadInt& eps0) {
  MatZ gamma0 = unit_matrix(g, content, eps0.t, eps0.s);
  if (gamma0.det() != 1) throw std::logic_error("unit_ladder: gamma0 not unimodular");
  MatZ power = gamma0;
  for (Int m = 1;; m += 1) {
    if (power.in_gamma1(N)) return Ladder{power, m};
    if (neg_in_gamma1(power, N)) {
      return Ladder{MatZ(-power.a, -power.b, -power.c, -power.d), m};
    }
    if (m > 8 * Int(N) * N) throw std::logic_error("unit_ladder: no Gamma_1(N) power found");
    power = power * gamma0;
  }
}

}  // namespace

QuadInt fundamental_unit(const Int& Delta) {
  if (Delta <= 0) throw std::invalid_argument("fundamental_unit: Delta must be positive");
  Int rem = mod_floor(Delta, 4);
  if (rem != 0 && rem != 1)
    throw std::invalid_argument("fundamental_unit: Delta must be 0 or 1 mod 4");
  Int root;
  if (is_square(Delta, &root)) throw std::invalid_argument("fundamental_unit: Delta is a square");

  if (rem == 0) {
    // t is forced even: t = 2x with x^2 - (Delta/4) s^2 = 1.
    auto [x, y] = pell_one(Delta / 4);
    return QuadInt{2 * x, y, Delta};
  }
  // Delta = 1 mod 4: the fundamental unit of the order may be a half-integer
  // pair; it is then the cube root of the Z[sqrt(Delta)] fundamental solution.
  auto [x, y] = pell_one(Delta);
  Int t = icbrt(2 * x);
  for (Int cand = t - 1; cand <= t + 1; ++cand) {
    if (cand <= 0) continue;
    if (cand * cand * cand - 3 * cand == 2 * x) {
      Int s2 = cand * cand - 4;
      if (s2 > 0 && s2 % Delta == 0) {
        Int s;
        if (is_square(s2 / Delta, &s) && s > 0) return QuadInt{cand, s, Delta};
      }
    }
  }
  return QuadInt{2 * x, 2 * y, Delta};
}

QuadraticData quad_invariants(const MatZ& g, int N) {
  if (!g.in_gamma1(N)) throw std::invalid_argument("quad_invariants: matrix not in Gamma_1(N)");
  if (classify(g) != MatClass::Hyperbolic)
    throw std::invalid_argument("quad_invariants: matrix not hyperbolic");

  QuadraticData data;
  Int tr = g.trace();
  data.D = tr * tr - 4;
  Int content = gcd3(g.c, g.d - g.a, -g.b);
  data.form = {g.c / content, (g.d - g.a) / content, -g.b / content};
  data.Delta = data.D / (content * content);
  if (data.form[1] * data.form[1] - 4 * data.form[0] * data.form[2] != data.Delta)
    throw std::logic_error("quad_invariants: discriminant mismatch");

  // nu = (a - d - sqrt(D)) / (2c), a root of c x^2 - (a-d) x - b.
  data.nu = QuadNum{Rat(g.a - g.d, 2 * g.c), Rat(Int(-1), 2 * g.c), data.D};
  {
    QuadNum c_nu2 = data.nu * data.nu;
    c_nu2.x *= Rat(g.c);
    c_nu2.y *= Rat(g.c);
    QuadNum rest{data.nu.x * Rat(g.d - g.a) - Rat(g.b), data.nu.y * Rat(g.d - g.a), data.D};
    QuadNum total = c_nu2 + rest;
    if (!total.is_zero()) throw std::logic_error("quad_invariants: nu root check failed");
  }

  data.eps = QuadInt{tr, 1, data.D};
  if (data.eps.norm() != Rat(1)) throw std::logic_error("quad_invariants: eps norm != 1");
  data.eps0 = fundamental_unit(data.Delta);

  Ladder ladder = unit_ladder(g, N, content, data.eps0);
  data.m = ladder.m;
  auto [gamma1, k] = primitivity(g, N);
  (void)gamma1;
  data.k = k;
  data.primitive = (k == 1);
  return data;
}

std::pair<MatZ, Int> primitivity(const MatZ& g, int N) {
  if (!g.in_gamma1(N)) throw std::invalid_argument("primitivity: matrix not in Gamma_1(N)");
  if (classify(g) != MatClass::Hyperbolic)
    throw std::invalid_argument("primitivity: matrix not hyperbolic");

  Int tr = g.trace();
  Int content = gcd3(g.c, g.d - g.a, -g.b);
  Int Delta = (tr * tr - 4) / (content * content);
  QuadInt eps0 = fundamental_unit(Delta);
  Ladder ladder = unit_ladder(g, N, content, eps0);

  // gamma lies in the infinite cyclic group generated by ladder.gamma1; find
  // the exponent by exact matrix powers (gamma1 or its inverse).
  Int bound = 4 * max_abs_entry(g) + 4;
  for (MatZ base : {ladder.gamma1, ladder.gamma1.inverse()}) {
    MatZ power = base;
    Int k = 1;
    while (max_abs_entry(power) <= bound) {
      if (power == g) return {base, k};
      power = power * base;
      k += 1;
    }
  }
  throw std::logic_error("primitivity: gamma not on the unit ladder");
}

DiagonalRestriction diagonal_restriction(const MatZ& g, int N, std::int64_t prec) {
  QuadraticData data = quad_invariants(g, N);  // rejects non-hyperbolic input
  QSeries lift = lift_cycle(g, N, prec);
  DiagonalRestriction out{lift, lift.scaled(Rat(Int(1), data.k)), std::move(data)};
  return out;
}

std::string QuadraticData::to_json() const {
  nlohmann::ordered_json j;
  j["D"] = D.str();
  j["form"] = {form[0].str(), form[1].str(), form[2].str()};
  j["Delta"] = Delta.str();
  j["eps"] = {eps.t.str(), eps.s.str()};
  j["eps0"] = {eps0.t.str(), eps0.s.str()};
  j["m"] = m.str();
  j["k"] = k.str();
  j["primitive"] = primitive;
  return j.dump();
}

}  // namespace eisenlift
