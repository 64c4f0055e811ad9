#pragma once

#include <map>
#include <optional>
#include <vector>

#include "eisenlift/rat.hpp"

namespace eisenlift {

/// 2x2 integer matrix (a b; c d); SL2 where a determinant-1 element is required.
struct MatZ {
  Int a, b, c, d;

  MatZ() : a(1), b(0), c(0), d(1) {}
  MatZ(Int a_, Int b_, Int c_, Int d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
  static MatZ identity() { return MatZ(); }

  Int det() const { return a * d - b * c; }
  Int trace() const { return a + d; }
  MatZ inverse() const { return MatZ(d, -b, -c, a); }  // valid for det = 1
  friend MatZ operator*(const MatZ& x, const MatZ& y) {
    return MatZ(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                x.c * y.b + x.d * y.d);
  }
  friend bool operator==(const MatZ& x, const MatZ& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const MatZ& x, const MatZ& y) { return !(x == y); }

  MatZ pow(unsigned long long e) const;
  bool in_gamma1(int N) const;

  /// "a,b,c,d" row-major.
  std::string str() const;
  static MatZ parse(const std::string& s);
};

enum class MatClass { Identity, Elliptic, Parabolic, Hyperbolic };

/// Cusp [m : n], coprime, normalized with n >= 0 and m = 1 when n = 0.
struct Cusp {
  Int m, n;

  Cusp() : m(1), n(0) {}
  Cusp(Int m_, Int n_);
  static Cusp infinity() { return Cusp(); }
  bool is_infinity() const { return n == 0; }

  friend bool operator==(const Cusp& x, const Cusp& y) { return x.m == y.m && x.n == y.n; }
  friend bool operator!=(const Cusp& x, const Cusp& y) { return !(x == y); }
  friend bool operator<(const Cusp& x, const Cusp& y) {
    return x.m < y.m || (x.m == y.m && x.n < y.n);
  }

  /// "m/n", with "inf" for [1:0].
  std::string str() const;
  static Cusp parse(const std::string& s);
};

/// gamma(r) for a cusp r in P^1(Q): the image of r under the Moebius action.
Cusp apply(const MatZ& g, const Cusp& r);

/// Classification by trace; requires det = 1. +-identity classifies as Identity.
MatClass classify(const MatZ& g);

/// Negative (Hirzebruch-Jung) continued fraction of a/c with convergents.
/// b[0] = ceil(a/c); b[k] >= 2 for k >= 1. Arrays p, q hold p_{-1}..p_n and
/// q_{-1}..q_n (so p[k+1] = p_k) with the recursion
/// p_{k+1} = b_{k+1} p_k - p_{k-1}, starting from (p_{-1},q_{-1}) = (1,0).
struct MinusCF {
  std::vector<Int> b;
  std::vector<Int> p, q;
  /// Index of the last partial quotient (b has n+1 entries).
  long long n() const { return static_cast<long long>(b.size()) - 1; }
  const Int& pk(long long k) const { return p[static_cast<size_t>(k + 1)]; }
  const Int& qk(long long k) const { return q[static_cast<size_t>(k + 1)]; }
};

MinusCF minus_cf(const Int& a, const Int& c);

/// gamma_k = (-p_k, p_{k-1}; -q_k, q_{k-1}) for 0 <= k <= n; gamma_{-1} = id.
MatZ gamma_k(const MinusCF& cf, long long k);

struct ParabolicData {
  Cusp r;        // fixed cusp
  MatZ gamma_r;  // gamma_r(inf) = r
  Int b;         // gamma_r^-1 gamma gamma_r = +-(1, b; 0, 1), sign-normalized
};

/// Fixed cusp, cusp matrix and translation length of a parabolic matrix.
ParabolicData parabolic_data(const MatZ& g);

struct CapTerm {
  Cusp cusp;
  MatZ gamma_r;
  Int coeff;
};
struct SymbolTerm {
  MatZ gamma;
  Int coeff;
};

enum class CycleKind { Parabolic, Hyperbolic };

/// Decomposition of the cycle of gamma into closed modular caps plus a
/// degree-0 sum of unimodular symbols.
struct CycleDecomposition {
  CycleKind kind;
  std::vector<CapTerm> caps;
  std::vector<SymbolTerm> symbols;
  MatZ source;
  std::optional<MinusCF> cf;

  std::string to_json() const;
};

/// Splits the homology class of gamma in Gamma_1(N), N >= 4.
/// Parabolic: b(gamma) times the cap at the fixed cusp. Hyperbolic, via the
/// continued fraction of a/c with s = sign(c) and m = p_{n-1} d - b q_{n-1}:
///   caps  (b_0 + s*m) at infinity, plus b_{k+1} at gamma_k(inf), k = 0..n-1;
///   symbols gamma_k, k = 0..n, each with coefficient +1.
CycleDecomposition decompose_cycle(const MatZ& g, int N);

/// Gamma_1(N)-equivalence of cusps via the finite criterion:
/// (m2, n2) = +-(m1 + j n1, n1) mod N for some j.
bool cusp_equivalent(int N, const Cusp& c1, const Cusp& c2);

/// Deterministic gamma_r = (m, i; n, j) with det 1 and gamma_r(inf) = r;
/// minimal |i|, ties toward nonnegative i.
MatZ matrix_for_cusp(const Cusp& r);

/// Formal sum of unimodular symbols sum c_i gamma_i {0, inf}.
struct ModularSymbolSum {
  std::vector<SymbolTerm> terms;
  /// Formal boundary sum c_i (gamma_i(inf) - gamma_i(0)) as cusp multiset.
  std::map<Cusp, Int> boundary() const;
};

/// Chain of unimodular symbols with boundary r2 - r1 (Ash-Rudolph style),
/// built from the convergents of minus_cf through infinity.
ModularSymbolSum reduce_symbol(const Cusp& r1, const Cusp& r2);

/// sigma_a in SL2(Z) congruent to (a^-1, 0; 0, a) mod N; deterministic:
/// sigma_1 = identity, otherwise (x, N; (x a - 1)/N, a) with x = a^-1 mod N^2.
MatZ hecke_sigma(const Int& a, int N);

/// Degree-n Hecke coset representatives sigma_a (a, b; 0, d), ad = n, d > 0,
/// gcd(a, N) = 1, 0 <= b < d; ordered by ascending a then b.
std::vector<MatZ> hecke_reps(const Int& n, int N);

}  // namespace eisenlift
