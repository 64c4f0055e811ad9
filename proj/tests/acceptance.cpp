// Acceptance suite: runs every criterion at its stated precision and prints
// one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "eisenlift/realquad.hpp"
#include "eisenlift/selftest.hpp"
#include "eisenlift/thetalift.hpp"

using namespace eisenlift;

namespace {

int g_failures = 0;

void report(int number, bool pass, const std::string& what, const std::string& detail = "") {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << ": " << what;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

std::vector<MatZ> gens(int N) {
  return {MatZ(1, 1, 0, 1), MatZ(1, 0, N, 1), MatZ(1, -1, 0, 1), MatZ(1, 0, -N, 1)};
}

MatZ random_word(int N, int maxlen, std::mt19937_64& rng) {
  auto g = gens(N);
  std::uniform_int_distribution<size_t> pick(0, g.size() - 1);
  std::uniform_int_distribution<int> len(1, maxlen);
  MatZ out;
  for (int i = 0, L = len(rng); i < L; ++i) out = out * g[pick(rng)];
  return out;
}

// 1. Triangle relations over all levels and admissible triples, up to q^60.
void criterion_triangles() {
  auto start = std::chrono::steady_clock::now();
  int checked = 0;
  std::string bad;
  for (int N = 4; N <= 12 && bad.empty(); ++N) {
    for (long long n1 = 1; n1 < N && bad.empty(); ++n1) {
      if (std::gcd(n1, static_cast<long long>(N)) != 1) continue;
      for (long long n2 = 1; n2 < N && bad.empty(); ++n2) {
        if (std::gcd(n2, static_cast<long long>(N)) != 1) continue;
        for (long long n3 = 1; n3 < N; ++n3) {
          if (std::gcd(n3, static_cast<long long>(N)) != 1) continue;
          if ((n1 + n2 + n3) % N != 0) continue;
          RelationReport r = verify_triangle(N, n1, n2, n3, 60);
          ++checked;
          if (!r.verified()) {
            bad = r.to_json();
            break;
          }
        }
      }
    }
  }
  bool anchors = true;
  {
    QSeries lhs = expand_G(1, 1, 5, 2) * expand_G(1, 1, 5, 2) +
                  expand_G(1, 1, 5, 2) * expand_G(1, 3, 5, 2) +
                  expand_G(1, 3, 5, 2) * expand_G(1, 1, 5, 2);
    QSeries rhs = expand_G(2, 1, 5, 2) + expand_G(2, 1, 5, 2) + expand_G(2, 3, 5, 2);
    anchors = lhs.coeff(0) == CycElem(5, Rat(3, 100)) && rhs.coeff(0) == CycElem(5, Rat(3, 100)) &&
              lhs.coeff(5) == CycElem(5, Rat(2, 5)) && rhs.coeff(5) == CycElem(5, Rat(2, 5));
  }
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  report(1, bad.empty() && anchors && secs < 300,
         "triangle relations exact to q^60 for N in 4..12",
         std::to_string(checked) + " triples, " + std::to_string(secs) + "s" +
             (bad.empty() ? "" : ", first failure " + bad));
}

// 2. Additivity of the lift on random words, q^40.
void criterion_additivity() {
  std::mt19937_64 rng(1001);
  int done = 0;
  std::string bad;
  for (int N : {4, 5, 6, 7}) {
    for (int i = 0; i < 50 && bad.empty(); ++i) {
      MatZ g = random_word(N, 6, rng), h = random_word(N, 6, rng);
      QSeries lhs = lift_cycle(g * h, N, 40);
      QSeries rhs = lift_cycle(g, N, 40) + lift_cycle(h, N, 40);
      if (!QSeries::equal_up_to_min_prec(lhs, rhs))
        bad = "N=" + std::to_string(N) + " " + g.str() + " | " + h.str();
      ++done;
    }
  }
  report(2, bad.empty(), "lift additivity on 200 random word pairs to q^40",
         bad.empty() ? std::to_string(done) + " pairs" : bad);
}

// 3. Inverse, conjugation, identity.
void criterion_symmetries() {
  std::mt19937_64 rng(1002);
  std::string bad;
  for (int N : {4, 5, 6, 7}) {
    if (!lift_cycle(MatZ::identity(), N, 20).is_zero()) bad = "identity";
    for (int i = 0; i < 25 && bad.empty(); ++i) {
      MatZ g = random_word(N, 6, rng), d = random_word(N, 6, rng);
      if (!QSeries::equal_up_to_min_prec(lift_cycle(g.inverse(), N, 20),
                                         -lift_cycle(g, N, 20)))
        bad = "inverse N=" + std::to_string(N) + " " + g.str();
      else if (!QSeries::equal_up_to_min_prec(lift_cycle(d * g * d.inverse(), N, 20),
                                              lift_cycle(g, N, 20)))
        bad = "conjugation N=" + std::to_string(N) + " " + g.str();
    }
  }
  report(3, bad.empty(), "lift(g^-1) = -lift(g), conjugation invariance, lift(1) = 0", bad);
}

// 4. Siegel-unit identity up to q-exponent 40.
void criterion_siegel() {
  std::string bad;
  for (int N = 4; N <= 8 && bad.empty(); ++N) {
    for (long long p = 0; p < N && bad.empty(); ++p)
      for (long long q = 0; q < N; ++q) {
        if (p == 0 && q == 0) continue;
        QSeries total =
            expand_E(2, p, q, N, 40 * N) + siegel_log_deriv(p, q, N, 40 * N);
        if (!total.is_zero()) {
          bad = "N=" + std::to_string(N) + " (" + std::to_string(p) + "," + std::to_string(q) + ")";
          break;
        }
      }
  }
  report(4, bad.empty(), "E^(2)_{p,q} + q dlog g_{p,q} = 0 to q^40 for N in 4..8", bad);
}

// 5. Functional-equation round trip at weight 1.
void criterion_dft_roundtrip() {
  std::string bad;
  for (int N = 2; N <= 8 && bad.empty(); ++N) {
    for (long long p = 0; p < N && bad.empty(); ++p)
      for (long long q = 0; q < N; ++q) {
        if (p == 0 && q == 0) continue;
        if (!QSeries::equal_up_to_min_prec(expand_Ehat(1, p, q, N, 40 * N),
                                           expand_E(1, p, q, N, 40 * N))) {
          bad = "N=" + std::to_string(N) + " (" + std::to_string(p) + "," + std::to_string(q) + ")";
          break;
        }
      }
  }
  report(5, bad.empty(), "Ehat^(1)_{p,q} = E^(1)_{p,q} to q^40 for N <= 8", bad);
}

// 6. Constant-term formulas.
void criterion_constants() {
  std::string bad;
  for (int N = 4; N <= 12 && bad.empty(); ++N) {
    for (long long r = 1; r < N; ++r) {
      if (expand_G(1, r, N, 2).coeff(0) != CycElem(N, -bernoulli(1, Rat(r, N)))) {
        bad = "G1 N=" + std::to_string(N) + " r=" + std::to_string(r);
        break;
      }
      if (expand_G(2, r, N, 2).coeff(0) != CycElem(N, -bernoulli(2, Rat(r, N)) * Rat(1, 2))) {
        bad = "G2 N=" + std::to_string(N) + " r=" + std::to_string(r);
        break;
      }
    }
    for (long long a = 1; a < N && bad.empty(); ++a)
      for (long long b = 1; b < N; ++b) {
        QSeries prod = expand_G(1, a, N, 2) * expand_G(1, b, N, 2);
        Rat expect = bernoulli(1, Rat(a, N)) * bernoulli(1, Rat(b, N));
        if (prod.coeff(0) != CycElem(N, expect)) {
          bad = "product N=" + std::to_string(N);
          break;
        }
      }
  }
  report(6, bad.empty(), "constant terms match the Bernoulli formulas for N <= 12", bad);
}

// 7. Continued-fraction well-formedness.
void criterion_cf() {
  std::mt19937_64 rng(1003);
  std::uniform_int_distribution<long long> pick(-100000, 100000);
  std::string bad;
  int done = 0;
  while (done < 1000 && bad.empty()) {
    long long a = pick(rng), c = pick(rng);
    if (c == 0 || std::gcd(a, c) != 1) continue;
    MinusCF cf = minus_cf(a, c);
    for (long long k = 0; k <= cf.n(); ++k) {
      if (gamma_k(cf, k).det() != 1 || cf.pk(k - 1) * cf.qk(k) - cf.pk(k) * cf.qk(k - 1) != 1) {
        bad = std::to_string(a) + "/" + std::to_string(c);
        break;
      }
    }
    if (cf.pk(cf.n()) * Int(c) != cf.qk(cf.n()) * Int(a)) bad = "final convergent";
    ++done;
  }
  bool refs = minus_cf(7, 3).b == std::vector<Int>{3, 2, 2} &&
              minus_cf(1, 4).b == std::vector<Int>{1, 2, 2, 2};
  report(7, bad.empty() && refs, "continued fractions well-formed on 1000 random inputs", bad);
}

// 8. Hecke representatives.
void criterion_hecke() {
  std::string bad;
  if (hecke_sigma(2, 5) != MatZ(13, 5, 5, 2)) bad = "sigma_2 reference";
  for (int N = 4; N <= 12 && bad.empty(); ++N) {
    for (long long a = 1; a < 2 * N && bad.empty(); ++a) {
      if (std::gcd(a, static_cast<long long>(N)) != 1) continue;
      MatZ s = hecke_sigma(a, N);
      if (s.det() != 1 || mod_floor(s.a * a - 1, N) != 0 || mod_floor(s.b, N) != 0 ||
          mod_floor(s.c, N) != 0 || mod_floor(s.d - a, N) != 0)
        bad = "sigma congruence N=" + std::to_string(N) + " a=" + std::to_string(a);
    }
    for (long long n = 1; n <= 20 && bad.empty(); ++n) {
      Int expected = 0;
      for (long long d = 1; d <= n; ++d)
        if (n % d == 0 && std::gcd(n / d, static_cast<long long>(N)) == 1) expected += d;
      auto reps = hecke_reps(n, N);
      if (Int(reps.size()) != expected)
        bad = "count N=" + std::to_string(N) + " n=" + std::to_string(n);
      for (const MatZ& m : reps)
        if (m.det() != n) bad = "determinant";
    }
  }
  report(8, bad.empty(), "Hecke coset representatives for n <= 20, N in 4..12", bad);
}

// 9. Three-variable Bernoulli identity.
void criterion_bernoulli() {
  std::mt19937_64 rng(1004);
  std::uniform_int_distribution<long long> den(2, 50);
  int tested = 0;
  std::string bad;
  while (tested < 100 && bad.empty()) {
    long long d1 = den(rng), d2 = den(rng);
    std::uniform_int_distribution<long long> n1(0, d1 - 1), n2(0, d2 - 1);
    Rat x(n1(rng), d1), y(n2(rng), d2);
    for (int target = 1; target <= 2; ++target) {
      Rat z = Rat(target) - x - y;
      if (z < Rat(0) || z >= Rat(1)) continue;
      Rat lhs = bernoulli(1, x) * bernoulli(1, y) + bernoulli(1, y) * bernoulli(1, z) +
                bernoulli(1, z) * bernoulli(1, x);
      Rat rhs = (bernoulli(2, x) + bernoulli(2, y) + bernoulli(2, z)) * Rat(-1, 2);
      if (lhs != rhs) bad = x.str() + "," + y.str() + "," + z.str();
      ++tested;
    }
  }
  report(9, bad.empty(), "Bernoulli lemma on 100 random triples", bad);
}

// 10. Parabolic lift as a difference of hyperbolic lifts, q^40.
void criterion_parabolic_difference() {
  std::mt19937_64 rng(1005);
  std::string bad;
  int done = 0;
  for (int N : {4, 5, 7}) {
    std::uniform_int_distribution<long long> tpick(-5, 5);
    while (done < (N == 4 ? 7 : (N == 5 ? 14 : 20)) && bad.empty()) {
      MatZ w = random_word(N, 4, rng);
      long long t = tpick(rng);
      if (t == 0) t = 1;
      MatZ par = w * MatZ(1, t, 0, 1) * w.inverse();  // parabolic, random cusp
      long long m = 2 * N;
      MatZ g1(1 + m * m, m, m, 1);
      while (classify(par * g1) != MatClass::Hyperbolic) {
        m += N;
        g1 = MatZ(1 + m * m, m, m, 1);
      }
      QSeries lhs = lift_cycle(par, N, 40);
      QSeries rhs = lift_cycle(par * g1, N, 40) - lift_cycle(g1, N, 40);
      if (!QSeries::equal_up_to_min_prec(lhs, rhs))
        bad = "N=" + std::to_string(N) + " " + par.str();
      ++done;
    }
  }
  report(10, bad.empty(), "parabolic lift = difference of hyperbolic lifts, 20 samples to q^40",
         bad);
}

// 11. Cap well-definedness across cusp-matrix representatives.
void criterion_cap_welldefined() {
  std::mt19937_64 rng(1006);
  std::uniform_int_distribution<long long> pick(-40, 40);
  std::string bad;
  int done = 0;
  for (int N : {4, 5, 7}) {
    for (int c = 0; c < 4 && bad.empty(); ++c) {
      long long m = pick(rng), n = pick(rng);
      if (m == 0 && n == 0) m = 1;
      Cusp r(m, n);
      MatZ base = matrix_for_cusp(r);
      QSeries ref = lift_cap(base, N, 15);
      for (int i = 0; i < 9 && bad.empty(); ++i) {
        MatZ alt = base * MatZ(1, pick(rng), 0, 1);
        if (i % 2 == 0) alt = MatZ(-alt.a, -alt.b, -alt.c, -alt.d);
        if (!QSeries::equal_up_to_min_prec(ref, lift_cap(alt, N, 15)))
          bad = "N=" + std::to_string(N) + " cusp " + r.str();
        ++done;
      }
    }
  }
  report(11, bad.empty() && done >= 100,
         "cap lift agrees across " + std::to_string(done) + " alternative representatives", bad);
}

// 12. Boundary of closed polygons lifts to zero with the frozen orientation.
void criterion_boundary_zero() {
  std::string bad;
  int triangles = 0, quads = 0;
  std::mt19937_64 rng(1007);
  for (int N : {5, 7, 9, 11}) {
    std::vector<std::array<long long, 3>> triples;
    for (long long n1 = 1; n1 < N; ++n1)
      for (long long n2 = 1; n2 < N; ++n2) {
        long long n3 = mod_floor_ll(-n1 - n2, N);
        if (std::gcd(n1, static_cast<long long>(N)) != 1) continue;
        if (std::gcd(n2, static_cast<long long>(N)) != 1) continue;
        if (std::gcd(n3, static_cast<long long>(N)) != 1 || n3 == 0) continue;
        triples.push_back({n1, n2, n3});
      }
    std::shuffle(triples.begin(), triples.end(), rng);
    int want = N == 11 ? 8 : 4;
    for (int i = 0; i < want && i < static_cast<int>(triples.size()) && bad.empty(); ++i) {
      TriangleData t = build_triangle(N, triples[i][0], triples[i][1], triples[i][2]);
      std::vector<VertexPair> tri = {VertexPair{t.m1, t.n1}, VertexPair{t.m2, t.n2},
                                     VertexPair{t.m3, t.n3}};
      RelationReport r = boundary_zero(N, tri, 60);
      if (!r.verified())
        bad = "triangle N=" + std::to_string(N) + " " + r.to_json();
      ++triangles;
      if (quads < 5 && bad.empty()) {
        VertexPair extra{t.m3 + t.m1, t.n3 + t.n1};
        if (boost::multiprecision::gcd(mod_floor(extra.n, N) == 0 ? Int(N) : mod_floor(extra.n, N),
                                       Int(N)) == 1) {
          std::vector<VertexPair> quad = {tri[0], tri[1], tri[2], extra};
          RelationReport r4 = boundary_zero(N, quad, 60);
          if (!r4.verified()) bad = "quadrilateral N=" + std::to_string(N) + " " + r4.to_json();
          ++quads;
        }
      }
    }
  }
  report(12, bad.empty() && triangles >= 20 && quads >= 5,
         "boundary-zero on " + std::to_string(triangles) + " triangles and " +
             std::to_string(quads) + " quadrilaterals to q^60",
         bad);
}

// 13. Real-quadratic certificates.
void criterion_realquad() {
  std::string bad;
  for (Int delta = 5; delta <= 400 && bad.empty(); ++delta) {
    Int rem = mod_floor(delta, 4);
    if (rem != 0 && rem != 1) continue;
    Int root = boost::multiprecision::sqrt(delta);
    if (root * root == delta) continue;
    QuadInt u = fundamental_unit(delta);
    if (u.norm() != Rat(1) || u.t <= 0 || u.s <= 0) {
      bad = "norm at Delta=" + delta.str();
      break;
    }
    // bounded brute force: no smaller solution below min(s, bound)
    Int limit = u.s < 20000 ? u.s : Int(20000);
    for (Int s = 1; s < limit; ++s) {
      Int t2 = delta * s * s + 4;
      Int t = boost::multiprecision::sqrt(t2);
      if (t * t == t2) {
        bad = "not minimal at Delta=" + delta.str();
        break;
      }
    }
  }
  std::mt19937_64 rng(1008);
  std::uniform_int_distribution<int> len(2, 5);
  int samples = 0;
  while (samples < 20 && bad.empty()) {
    int N = (samples % 2 == 0) ? 4 : 5;
    MatZ g = random_word(N, len(rng), rng);
    if (classify(g) != MatClass::Hyperbolic) continue;
    DiagonalRestriction base = diagonal_restriction(g, N, 12);
    MatZ power = g;
    QSeries acc = base.lift;
    for (int j = 2; j <= 4; ++j) {
      power = power * g;
      acc += base.lift;
      DiagonalRestriction dj = diagonal_restriction(power, N, 12);
      if (!QSeries::equal_up_to_min_prec(dj.lift, acc)) {
        bad = "scaling j=" + std::to_string(j) + " " + g.str();
        break;
      }
    }
    ++samples;
  }
  report(13, bad.empty(), "Pell certificates to Delta = 400 and lift scaling on 20 samples", bad);
}

}  // namespace

int main() {
  criterion_triangles();
  criterion_additivity();
  criterion_symmetries();
  criterion_siegel();
  criterion_dft_roundtrip();
  criterion_constants();
  criterion_cf();
  criterion_hecke();
  criterion_bernoulli();
  criterion_parabolic_difference();
  criterion_cap_welldefined();
  criterion_boundary_zero();
  criterion_realquad();
  if (g_failures == 0)
    std::cout << "acceptance: all 13 criteria passed" << std::endl;
  else
    std::cout << "acceptance: " << g_failures << " criteria FAILED" << std::endl;
  return g_failures;
}
