#include "eisenlift/selftest.hpp"

#include <future>
#include <random>
#include <sstream>

#include "eisenlift/eisenstein.hpp"
#include "eisenlift/realquad.hpp"
#include "eisenlift/thetalift.hpp"

namespace eisenlift {

namespace {

using Check = CheckResult (*)();

CheckResult pass(const char* name, const std::string& detail = "") {
  return CheckResult{name, true, detail};
}
CheckResult fail(const char* name, const std::string& detail) {
  return CheckResult{name, false, detail};
}

Rat random_unit_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> den(2, 40);
  long long d = den(rng);
  std::uniform_int_distribution<long long> num(0, d - 1);
  return Rat(num(rng), d);
}

CheckResult check_bernoulli_values() {
  if (bernoulli(1, Rat(0)) != Rat(-1, 2)) return fail("bernoulli-values", "B1(0)");
  if (bernoulli(1, Rat(1, 2)) != Rat(0)) return fail("bernoulli-values", "B1(1/2)");
  if (bernoulli(2, Rat(1, 5)) != Rat(1, 150)) return fail("bernoulli-values", "B2(1/5)");
  if (bernoulli(2, Rat(3, 5)) != Rat(-11, 150)) return fail("bernoulli-values", "B2(3/5)");
  return pass("bernoulli-values");
}

CheckResult check_bernoulli_lemma() {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 60; ++i) {
    Rat x = random_unit_rat(rng), y = random_unit_rat(rng);
    for (int target = 1; target <= 2; ++target) {
      Rat z = Rat(target) - x - y;
      if (z < Rat(0) || z >= Rat(1)) continue;
      Rat lhs = bernoulli(1, x) * bernoulli(1, y) + bernoulli(1, y) * bernoulli(1, z) +
                bernoulli(1, z) * bernoulli(1, x);
      Rat rhs = (bernoulli(2, x) + bernoulli(2, y) + bernoulli(2, z)) * Rat(-1, 2);
      if (lhs != rhs) return fail("bernoulli-lemma", x.str() + "," + y.str() + "," + z.str());
    }
  }
  return pass("bernoulli-lemma");
}

CheckResult check_cyclotomic_ring() {
  std::mt19937_64 rng(2);
  for (int N : {5, 8, 12}) {
    std::uniform_int_distribution<long long> coeff(-4, 4);
    auto rand_elem = [&] {
      std::vector<Rat> c(static_cast<size_t>(euler_phi(N)));
      for (auto& x : c) x = Rat(coeff(rng));
      return CycElem(N, c);
    };
    for (int i = 0; i < 10; ++i) {
      CycElem a = rand_elem(), b = rand_elem(), c = rand_elem();
      if ((a * b) * c != a * (b * c)) return fail("cyclotomic-ring", "assoc");
      if (a * (b + c) != a * b + a * c) return fail("cyclotomic-ring", "dist");
      if (a * b != b * a) return fail("cyclotomic-ring", "comm");
    }
  }
  for (int N = 1; N <= 16; ++N) {
    for (long long i = 0; i < N; ++i)
      for (long long j = 0; j < N; ++j)
        if (zeta_pow(N, i) * zeta_pow(N, j) != zeta_pow(N, i + j))
          return fail("cyclotomic-ring", "zeta power table N=" + std::to_string(N));
  }
  return pass("cyclotomic-ring");
}

CheckResult check_qseries_ring() {
  std::mt19937_64 rng(3);
  int N = 6;
  std::int64_t prec = 30;
  std::uniform_int_distribution<long long> coeff(-3, 3);
  std::uniform_int_distribution<std::int64_t> expo(0, 15);
  auto rand_series = [&](bool unit) {
    QSeries s(N, prec);
    for (int t = 0; t < 6; ++t)
      s.add_to_coeff(expo(rng), CycElem(N, Rat(coeff(rng))));
    if (unit) s.set_coeff(0, CycElem(N, Rat(1)));
    return s;
  };
  for (int i = 0; i < 12; ++i) {
    QSeries a = rand_series(false), b = rand_series(false), c = rand_series(false);
    if (!QSeries::equal_up_to_min_prec((a * b) * c, a * (b * c)))
      return fail("qseries-ring", "assoc");
    if (!QSeries::equal_up_to_min_prec(a * (b + c), a * b + a * c))
      return fail("qseries-ring", "dist");
    QSeries u = rand_series(true);
    if (!QSeries::equal_up_to_min_prec(u * u.invert(), QSeries::constant(N, Rat(1), prec)))
      return fail("qseries-ring", "invert");
    if (!QSeries::equal_up_to_min_prec((a * b).q_ddq(), a.q_ddq() * b + a * b.q_ddq()))
      return fail("qseries-ring", "derivation");
  }
  return pass("qseries-ring");
}

CheckResult check_eisenstein_constants() {
  for (int N = 4; N <= 12; ++N) {
    for (long long r = 1; r < N; ++r) {
      QSeries g1 = expand_G(1, r, N, 2);
      if (g1.coeff(0) != CycElem(N, -bernoulli(1, Rat(r, N))))
        return fail("eisenstein-constants", "G1 N=" + std::to_string(N));
      QSeries g2 = expand_G(2, r, N, 2);
      if (g2.coeff(0) != CycElem(N, -bernoulli(2, Rat(r, N)) * Rat(1, 2)))
        return fail("eisenstein-constants", "G2 N=" + std::to_string(N));
    }
  }
  return pass("eisenstein-constants");
}

CheckResult check_reflection() {
  for (int N = 4; N <= 9; ++N) {
    for (long long r = 1; r < N; ++r) {
      if (!QSeries::equal_up_to_min_prec(expand_G(1, N - r, N, 12), -expand_G(1, r, N, 12)))
        return fail("reflection", "k=1 N=" + std::to_string(N));
      if (!QSeries::equal_up_to_min_prec(expand_G(2, N - r, N, 12), expand_G(2, r, N, 12)))
        return fail("reflection", "k=2 N=" + std::to_string(N));
    }
  }
  return pass("reflection");
}

CheckResult check_dft_roundtrip() {
  for (int N = 4; N <= 6; ++N) {
    for (long long p = 0; p < N; ++p)
      for (long long q = 0; q < N; ++q) {
        if (p == 0 && q == 0) continue;
        if (!QSeries::equal_up_to_min_prec(expand_Ehat(1, p, q, N, 8 * N),
                                           expand_E(1, p, q, N, 8 * N)))
          return fail("dft-roundtrip", "N=" + std::to_string(N) + " p=" + std::to_string(p) +
                                            " q=" + std::to_string(q));
      }
  }
  return pass("dft-roundtrip");
}

CheckResult check_siegel_identity() {
  for (int N : {4, 5}) {
    for (long long p = 0; p < N; ++p)
      for (long long q = 0; q < N; ++q) {
        if (p == 0 && q == 0) continue;
        QSeries total = expand_E(2, p, q, N, 20 * N) + siegel_log_deriv(p, q, N, 20 * N);
        if (!total.is_zero())
          return fail("siegel-identity", "N=" + std::to_string(N) + " (" + std::to_string(p) +
                                              "," + std::to_string(q) + ")");
      }
  }
  return pass("siegel-identity");
}

CheckResult check_ghat2() {
  for (int N = 4; N <= 8; ++N) {
    for (long long p = 0; p < N; ++p) {
      QSeries gh = expand_Ghat2(p, N, 10);
      if (!gh.rational_coefficients()) return fail("ghat2", "irrational N=" + std::to_string(N));
      if (!QSeries::equal_up_to_min_prec(gh, expand_Ghat2(-p, N, 10)))
        return fail("ghat2", "parity N=" + std::to_string(N));
    }
  }
  return pass("ghat2");
}

CheckResult check_minus_cf() {
  MinusCF cf = minus_cf(7, 3);
  if (cf.b != std::vector<Int>{3, 2, 2}) return fail("minus-cf", "7/3 quotients");
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long long> pick(-400, 400);
  int done = 0;
  while (done < 200) {
    long long a = pick(rng), c = pick(rng);
    if (c == 0) continue;
    if (boost::multiprecision::gcd(Int(a < 0 ? -a : a), Int(c < 0 ? -c : c)) != 1) continue;
    MinusCF f = minus_cf(a, c);
    long long n = f.n();
    for (long long k = 0; k <= n; ++k) {
      if (gamma_k(f, k).det() != 1) return fail("minus-cf", "det");
      if (f.pk(k - 1) * f.qk(k) - f.pk(k) * f.qk(k - 1) != 1)
        return fail("minus-cf", "unimodularity");
    }
    if (f.pk(n) * Int(c) != f.qk(n) * Int(a)) return fail("minus-cf", "final convergent");
    ++done;
  }
  return pass("minus-cf");
}

CheckResult check_hecke() {
  if (hecke_sigma(2, 5) != MatZ(13, 5, 5, 2)) return fail("hecke", "sigma_2 at N=5");
  for (int N = 4; N <= 12; ++N) {
    for (long long a = 1; a < N; ++a) {
      if (std::gcd(a, static_cast<long long>(N)) != 1) continue;
      MatZ s = hecke_sigma(a, N);
      if (s.det() != 1) return fail("hecke", "det");
      auto [g, inv, y] = extended_gcd(Int(a), Int(N));
      (void)g;
      (void)y;
      if (mod_floor(s.a - inv, N) != 0 || mod_floor(s.b, N) != 0 || mod_floor(s.c, N) != 0 ||
          mod_floor(s.d - a, N) != 0)
        return fail("hecke", "congruence");
    }
    for (long long n = 1; n <= 12; ++n) {
      Int expected = 0;
      for (long long d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        if (std::gcd(n / d, static_cast<long long>(N)) == 1) expected += d;
      }
      if (Int(hecke_reps(n, N).size()) != expected) return fail("hecke", "rep count");
    }
  }
  return pass("hecke");
}

CheckResult check_cusp_classes() {
  // Class counts over coprime pairs in a box large enough to hit every class.
  auto count_classes = [](int N) {
    std::vector<Cusp> reps;
    for (long long m = -2 * N; m <= 2 * N; ++m)
      for (long long n = 0; n <= 2 * N; ++n) {
        if (m == 0 && n == 0) continue;
        if (std::gcd(m < 0 ? -m : m, n) != 1) continue;
        Cusp c(m, n);
        bool known = false;
        for (const Cusp& r : reps)
          if (cusp_equivalent(N, r, c)) {
            known = true;
            break;
          }
        if (!known) reps.push_back(c);
      }
    return reps.size();
  };
  if (count_classes(5) != 4) return fail("cusp-classes", "N=5");
  if (count_classes(7) != 6) return fail("cusp-classes", "N=7");
  if (!cusp_equivalent(5, Cusp(1, 0), Cusp(1, 5))) return fail("cusp-classes", "inf ~ 1/5");
  if (cusp_equivalent(5, Cusp(0, 1), Cusp(1, 0))) return fail("cusp-classes", "0 !~ inf");
  return pass("cusp-classes");
}

std::vector<MatZ> gamma1_generators(int N) {
  return {MatZ(1, 1, 0, 1), MatZ(1, 0, N, 1), MatZ(1, -1, 0, 1), MatZ(1, 0, -N, 1)};
}

MatZ random_word(int N, int len, std::mt19937_64& rng) {
  auto gens = gamma1_generators(N);
  std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
  MatZ g;
  for (int i = 0; i < len; ++i) g = g * gens[pick(rng)];
  return g;
}

CheckResult check_lift_additivity() {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> len(1, 5);
  for (int N : {4, 5}) {
    for (int i = 0; i < 15; ++i) {
      MatZ g = random_word(N, len(rng), rng), h = random_word(N, len(rng), rng);
      QSeries lhs = lift_cycle(g * h, N, 10);
      QSeries rhs = lift_cycle(g, N, 10) + lift_cycle(h, N, 10);
      if (!QSeries::equal_up_to_min_prec(lhs, rhs))
        return fail("lift-additivity", "N=" + std::to_string(N) + " " + g.str() + " * " + h.str());
    }
  }
  return pass("lift-additivity");
}

CheckResult check_lift_symmetries() {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> len(1, 5);
  for (int N : {4, 5}) {
    for (int i = 0; i < 10; ++i) {
      MatZ g = random_word(N, len(rng), rng), d = random_word(N, len(rng), rng);
      if (!QSeries::equal_up_to_min_prec(lift_cycle(g.inverse(), N, 10),
                                         -lift_cycle(g, N, 10)))
        return fail("lift-symmetries", "inverse");
      if (!QSeries::equal_up_to_min_prec(lift_cycle(d * g * d.inverse(), N, 10),
                                         lift_cycle(g, N, 10)))
        return fail("lift-symmetries", "conjugation");
    }
  }
  return pass("lift-symmetries");
}

CheckResult check_cap_welldefined() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> t(-6, 6);
  for (int N : {4, 5, 7}) {
    for (int i = 0; i < 20; ++i) {
      long long rm = t(rng), rn = t(rng);
      if (rm == 0 && rn == 0) rn = 1;
      Cusp r(rm, rn);
      MatZ base = matrix_for_cusp(r);
      QSeries ref = lift_cap(base, N, 8);
      MatZ alt = base * MatZ(1, t(rng), 0, 1);
      if (t(rng) % 2 == 0) alt = MatZ(-alt.a, -alt.b, -alt.c, -alt.d);
      if (!QSeries::equal_up_to_min_prec(ref, lift_cap(alt, N, 8)))
        return fail("cap-welldefined", r.str());
    }
  }
  return pass("cap-welldefined");
}

CheckResult check_parabolic_difference() {
  for (int N : {4, 5, 7}) {
    MatZ par(1, 3, 0, 1);
    MatZ par2(1, 0, N, 1);
    for (const MatZ& p : {par, par2}) {
      long long m = 2 * N;
      MatZ g1(1 + m * m, m, m, 1);
      QSeries lhs = lift_cycle(p, N, 10);
      QSeries rhs = lift_cycle(p * g1, N, 10) - lift_cycle(g1, N, 10);
      if (!QSeries::equal_up_to_min_prec(lhs, rhs))
        return fail("parabolic-difference", "N=" + std::to_string(N));
    }
  }
  return pass("parabolic-difference");
}

CheckResult check_boundary_zero() {
  TriangleData t = build_triangle(5, 1, 1, 3);
  std::vector<VertexPair> tri = {VertexPair{t.m1, t.n1}, VertexPair{t.m2, t.n2},
                                 VertexPair{t.m3, t.n3}};
  RelationReport report = boundary_zero(5, tri, 20);
  if (!report.verified()) return fail("boundary-zero", report.to_json());
  return pass("boundary-zero");
}

CheckResult check_triangle_anchor() {
  RelationReport report = verify_triangle(5, 1, 1, 3, 20);
  if (!report.verified()) return fail("triangle-anchor", report.to_json());
  QSeries lhs = expand_G(1, 1, 5, 4) * expand_G(1, 1, 5, 4) +
                expand_G(1, 1, 5, 4) * expand_G(1, 3, 5, 4) +
                expand_G(1, 3, 5, 4) * expand_G(1, 1, 5, 4);
  if (lhs.coeff(0) != CycElem(5, Rat(3, 100))) return fail("triangle-anchor", "constant");
  if (lhs.coeff(5) != CycElem(5, Rat(2, 5))) return fail("triangle-anchor", "q^1");
  return pass("triangle-anchor");
}

CheckResult check_pell() {
  if (fundamental_unit(5) != (QuadInt{3, 1, 5})) return fail("pell", "Delta=5");
  if (fundamental_unit(32) != (QuadInt{6, 1, 32})) return fail("pell", "Delta=32");
  if (fundamental_unit(8) != (QuadInt{6, 2, 8})) return fail("pell", "Delta=8");
  for (Int delta = 5; delta <= 120; ++delta) {
    Int rem = mod_floor(delta, 4);
    if (rem != 0 && rem != 1) continue;
    Int root = boost::multiprecision::sqrt(delta);
    if (root * root == delta) continue;
    QuadInt u = fundamental_unit(delta);
    if (u.t * u.t - delta * u.s * u.s != 4) return fail("pell", "norm " + delta.str());
    // bounded brute force
    for (Int s = 1; s < u.s; ++s) {
      Int t2 = delta * s * s + 4;
      Int r = boost::multiprecision::sqrt(t2);
      if (r * r == t2) return fail("pell", "not minimal " + delta.str());
    }
  }
  return pass("pell");
}

CheckResult check_diagonal_restriction() {
  MatZ g(1, 1, 4, 5);
  DiagonalRestriction d1 = diagonal_restriction(g, 4, 8);
  if (d1.data.D != 32 || d1.data.k != 1) return fail("diag-restriction", "invariants");
  DiagonalRestriction d2 = diagonal_restriction(g * g, 4, 8);
  if (d2.data.k != 2) return fail("diag-restriction", "k of square");
  if (!QSeries::equal_up_to_min_prec(d2.lift, d1.lift + d1.lift))
    return fail("diag-restriction", "doubling");
  if (!QSeries::equal_up_to_min_prec(d2.diagonal, d1.diagonal))
    return fail("diag-restriction", "diagonal label");
  return pass("diag-restriction");
}

constexpr Check kChecks[] = {
    check_bernoulli_values, check_bernoulli_lemma, check_cyclotomic_ring,  check_qseries_ring,
    check_eisenstein_constants, check_reflection,  check_dft_roundtrip,    check_siegel_identity,
    check_ghat2,            check_minus_cf,        check_hecke,            check_cusp_classes,
    check_lift_additivity,  check_lift_symmetries, check_cap_welldefined,
    check_parabolic_difference, check_boundary_zero, check_triangle_anchor, check_pell,
    check_diagonal_restriction,
};

}  // namespace

std::vector<CheckResult> run_selftest(bool parallel) {
  std::vector<CheckResult> results;
  if (!parallel) {
    for (Check c : kChecks) results.push_back(c());
    return results;
  }
  std::vector<std::future<CheckResult>> futures;
  futures.reserve(std::size(kChecks));
  for (Check c : kChecks) futures.push_back(std::async(std::launch::async, c));
  for (auto& f : futures) results.push_back(f.get());
  return results;
}

}  // namespace eisenlift
