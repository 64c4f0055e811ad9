#include <doctest.h>

#include <random>

#include "eisenlift/thetalift.hpp"

using namespace eisenlift;

namespace {

std::vector<MatZ> gens(int N) {
  return {MatZ(1, 1, 0, 1), MatZ(1, 0, N, 1), MatZ(1, -1, 0, 1), MatZ(1, 0, -N, 1)};
}

MatZ random_word(int N, int len, std::mt19937_64& rng) {
  auto g = gens(N);
  std::uniform_int_distribution<size_t> pick(0, g.size() - 1);
  MatZ out;
  for (int i = 0; i < len; ++i) out = out * g[pick(rng)];
  return out;
}

std::vector<VertexPair> triangle_vertices(const TriangleData& t) {
  return {VertexPair{t.m1, t.n1}, VertexPair{t.m2, t.n2}, VertexPair{t.m3, t.n3}};
}

}  // namespace

TEST_CASE("cap lifts") {
  int N = 5;
  CHECK(QSeries::equal_up_to_min_prec(lift_cap(MatZ::identity(), N, 10),
                                      expand_H(1, 0, N, 10)));
  CHECK(QSeries::equal_up_to_min_prec(lift_cap(MatZ(0, -1, 1, 0), N, 10),
                                      expand_G(2, N - 1, N, 10)));
  MinusCF cf = minus_cf(7, 5);
  for (long long k = 0; k <= cf.n(); ++k) {
    CHECK(QSeries::equal_up_to_min_prec(
        lift_cap(gamma_k(cf, k), N, 8),
        expand_H(static_cast<long long>(mod_floor(cf.qk(k - 1), N)),
                 static_cast<long long>(mod_floor(cf.qk(k), N)), N, 8)));
  }
  CHECK_THROWS_AS(lift_cap(MatZ(1, 0, 0, 2), N, 5), std::invalid_argument);
}

TEST_CASE("unimodular symbol lifts") {
  int N = 5;
  CHECK(lift_unimodular(MatZ::identity(), N, 10).is_zero());
  CHECK(lift_unimodular(MatZ(0, -1, 1, 0), N, 10).is_zero());
  CHECK(lift_unimodular(MatZ(-1, 1, -1, 0), N, 10).is_zero());
  MatZ g(1, 1, 2, 3);
  CHECK(QSeries::equal_up_to_min_prec(
      lift_unimodular(g, N, 10), -(expand_G(1, 3, N, 10) * expand_G(1, 2, N, 10)).truncated(10 * N)));
}

TEST_CASE("cycle lift anchors") {
  CHECK(lift_cycle(MatZ::identity(), 4, 10).is_zero());
  CHECK(QSeries::equal_up_to_min_prec(lift_cycle(MatZ(1, 4, 0, 1), 4, 12),
                                      expand_H(1, 0, 4, 12).scaled(Rat(4))));
  // (1,1;4,5) = (1,0;4,1)(1,1;0,1): additivity pins the value
  QSeries direct = lift_cycle(MatZ(1, 1, 4, 5), 4, 12);
  QSeries viaparts = lift_cycle(MatZ(1, 0, 4, 1), 4, 12) + lift_cycle(MatZ(1, 1, 0, 1), 4, 12);
  CHECK(QSeries::equal_up_to_min_prec(direct, viaparts));
  // explicit assembly: 3 H_{1,0} + 2 (H_{0,1} + H_{1,2} + H_{2,3}) plus the
  // G-products, which vanish at N = 4 since G^(1)_0 = G^(1)_2 = 0
  QSeries expected = expand_H(1, 0, 4, 12).scaled(Rat(3)) +
                     (expand_H(0, 1, 4, 12) + expand_H(1, 2, 4, 12) + expand_H(2, 3, 4, 12))
                         .scaled(Rat(2));
  CHECK(QSeries::equal_up_to_min_prec(direct, expected));
  CHECK(direct.rational_coefficients());
  CHECK_THROWS_AS(lift_cycle(MatZ(2, 1, 1, 1), 4, 5), std::invalid_argument);
}

TEST_CASE("lift additivity on random words") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> len(1, 6);
  for (int N : {4, 5, 6}) {
    for (int i = 0; i < 15; ++i) {
      MatZ g = random_word(N, len(rng), rng), h = random_word(N, len(rng), rng);
      CHECK(QSeries::equal_up_to_min_prec(lift_cycle(g * h, N, 10),
                                          lift_cycle(g, N, 10) + lift_cycle(h, N, 10)));
    }
  }
}

TEST_CASE("lift symmetries") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> len(1, 6);
  int N = 5;
  for (int i = 0; i < 10; ++i) {
    MatZ g = random_word(N, len(rng), rng), d = random_word(N, len(rng), rng);
    CHECK(QSeries::equal_up_to_min_prec(lift_cycle(g.inverse(), N, 10), -lift_cycle(g, N, 10)));
    CHECK(QSeries::equal_up_to_min_prec(lift_cycle(d * g * d.inverse(), N, 10),
                                        lift_cycle(g, N, 10)));
  }
}

TEST_CASE("cap lift independent of the cusp matrix choice") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long long> pick(-8, 8);
  for (int N : {4, 5}) {
    for (int i = 0; i < 30; ++i) {
      long long m = pick(rng), n = pick(rng);
      if (m == 0 && n == 0) m = 1;
      MatZ base = matrix_for_cusp(Cusp(m, n));
      QSeries ref = lift_cap(base, N, 8);
      MatZ alt = base * MatZ(1, pick(rng), 0, 1);
      if (i % 2 == 0) alt = MatZ(-alt.a, -alt.b, -alt.c, -alt.d);
      CHECK(QSeries::equal_up_to_min_prec(ref, lift_cap(alt, N, 8)));
    }
  }
}

TEST_CASE("triangle construction") {
  TriangleData t = build_triangle(5, 1, 1, 3);
  CHECK(t.n1 + t.n2 + t.n3 == 0);
  CHECK(t.m1 * t.n2 - t.m2 * t.n1 == 1);
  CHECK(t.m3 == -t.m1 - t.m2);
  for (const MatZ& side : t.sides) CHECK(side.det() == 1);
  // all three determinants coincide by the algebraic identity
  CHECK(t.sides[0].det() == t.sides[1].det());
  CHECK(t.sides[1].det() == t.sides[2].det());
  CHECK_THROWS_AS(build_triangle(4, 1, 1, 2), std::invalid_argument);
}

TEST_CASE("triangle relation anchors at N = 5") {
  RelationReport report = verify_triangle(5, 1, 1, 3, 30);
  CHECK(report.verified());
  CHECK(report.coeffs_compared >= 5);
  CHECK(report.pairwise_coprime.has_value());
  // constant term 3/100 and q^1 coefficient 2/5 on both sides
  QSeries lhs = expand_G(1, 1, 5, 4) * expand_G(1, 1, 5, 4) +
                expand_G(1, 1, 5, 4) * expand_G(1, 3, 5, 4) +
                expand_G(1, 3, 5, 4) * expand_G(1, 1, 5, 4);
  QSeries rhs = expand_G(2, 1, 5, 4) + expand_G(2, 1, 5, 4) + expand_G(2, 3, 5, 4);
  CHECK(lhs.coeff(0) == CycElem(5, Rat(3, 100)));
  CHECK(rhs.coeff(0) == CycElem(5, Rat(3, 100)));
  CHECK(lhs.coeff(5) == CycElem(5, Rat(2, 5)));
  CHECK(rhs.coeff(5) == CycElem(5, Rat(2, 5)));
}

TEST_CASE("triangle relation across levels") {
  CHECK(verify_triangle(7, 1, 2, 4, 25).verified());
  CHECK(verify_triangle(9, 1, 1, 7, 20).verified());
  RelationReport rejected = verify_triangle(4, 1, 1, 2, 10);
  CHECK(rejected.status == RelationStatus::Rejected);
  CHECK(rejected.exit_code() == 2);
}

TEST_CASE("polygon relation") {
  TriangleData t = build_triangle(5, 1, 1, 3);
  std::vector<VertexPair> tri = triangle_vertices(t);
  CHECK(verify_polygon(5, tri, 20).verified());

  // quadrilateral: extend across the unimodular diagonal (r3, r1) by the
  // Farey-style vertex r4 = [-(m3 + m1) : n3 + n1]
  std::vector<VertexPair> quad = {tri[0], tri[1], tri[2],
                                  VertexPair{t.m3 + t.m1, t.n3 + t.n1}};
  RelationReport qr = verify_polygon(5, quad, 20);
  CHECK(qr.verified());

  // sides not unimodular
  std::vector<VertexPair> bad = {VertexPair{1, 1}, VertexPair{1, 2}, VertexPair{1, 3}};
  RelationReport rej = verify_polygon(5, bad, 10);
  CHECK(rej.status == RelationStatus::Rejected);
}

TEST_CASE("boundary of a closed polygon lifts to zero") {
  TriangleData t = build_triangle(5, 1, 1, 3);
  std::vector<VertexPair> tri = triangle_vertices(t);
  RelationReport report = boundary_zero(5, tri, 25);
  CHECK(report.verified());
  CHECK(report.coeffs_compared >= 5);

  // reversing the orientation (vertices reversed, m negated) still cancels
  std::vector<VertexPair> reversed;
  for (auto it = tri.rbegin(); it != tri.rend(); ++it)
    reversed.push_back(VertexPair{-it->m, it->n});
  CHECK(boundary_zero(5, reversed, 25).verified());

  // the frozen orientation is the only one that works
  QSeries sides(5, 25 * 5), caps(5, 25 * 5);
  for (size_t i = 0; i < 3; ++i) {
    const VertexPair& x = tri[i];
    const VertexPair& y = tri[(i + 1) % 3];
    MatZ side(y.m, x.m, -y.n, -x.n);
    sides += lift_unimodular(side, 5, 25);
    caps += lift_cap(side, 5, 25);
  }
  CHECK((sides + caps).is_zero());
  CHECK_FALSE((sides - caps).is_zero());
}

TEST_CASE("report serialization carries the verdict") {
  RelationReport ok = verify_triangle(5, 1, 1, 3, 15);
  CHECK(ok.to_json().find("\"status\":\"verified\"") != std::string::npos);
  CHECK(ok.exit_code() == 0);
  RelationReport rej = verify_triangle(5, 1, 1, 1, 15);
  CHECK(rej.to_json().find("\"status\":\"rejected\"") != std::string::npos);
}

TEST_CASE("triangle verdict is stable under doubled precision") {
  RelationReport base = verify_triangle(7, 1, 2, 4, 25);
  CHECK(base.verified());
  // re-derive both sides at doubled precision and truncate
  long long idx[3] = {1, 2, 4};
  QSeries lhs(7, 50 * 7), rhs(7, 50 * 7);
  for (int i = 0; i < 3; ++i) {
    lhs += (expand_G(1, idx[i], 7, 50) * expand_G(1, idx[(i + 1) % 3], 7, 50)).truncated(50 * 7);
    rhs += expand_G(2, idx[i], 7, 50);
  }
  CHECK(QSeries::equal_up_to_min_prec(lhs.truncated(25 * 7), rhs.truncated(25 * 7)));
  CHECK(QSeries::equal_up_to_min_prec(lhs, rhs));
}

TEST_CASE("lift series round-trips through its serialization") {
  QSeries lift = lift_cycle(MatZ(1, 1, 4, 5), 4, 15);
  QSeries back = QSeries::from_json(lift.to_json());
  CHECK(QSeries::equal_up_to_min_prec(lift, back));
  CHECK(lift.to_json() == back.to_json());
}
