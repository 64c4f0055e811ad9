#include "eisenlift/thetalift.hpp"

#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace eisenlift {

namespace {

// Memo for weight-1 products G^(1)_a G^(1)_b, keyed by (N, a, b, prec).
std::mutex g_prod_mutex;
std::unordered_map<std::string, QSeries> g_prod_cache;

QSeries g1_product(long long a, long long b, int N, std::int64_t prec) {
  long long ar = mod_floor_ll(a, N), br = mod_floor_ll(b, N);
  if (ar > br) std::swap(ar, br);
  std::string key = std::to_string(N) + "|" + std::to_string(ar) + "," + std::to_string(br) +
                    "|" + std::to_string(prec);
  {
    std::lock_guard<std::mutex> lock(g_prod_mutex);
    auto it = g_prod_cache.find(key);
    if (it != g_prod_cache.end()) return it->second;
  }
  QSeries prod = (expand_G(1, ar, N, prec) * expand_G(1, br, N, prec)).truncated(prec * N);
  std::lock_guard<std::mutex> lock(g_prod_mutex);
  return g_prod_cache.emplace(key, std::move(prod)).first->second;
}

long long to_index(const Int& v, int N) { return static_cast<long long>(mod_floor(v, N)); }

std::string coeff_str(const CycElem& c) {
  return c.is_rational() ? c.rat_value().str() : c.str();
}

RelationReport compare_series(RelationReport report, const QSeries& lhs, const QSeries& rhs,
                              const QSeries* counted = nullptr) {
  std::int64_t e = QSeries::first_mismatch(lhs, rhs);
  if (e < 0) {
    report.status = RelationStatus::Verified;
    const QSeries& tally = counted ? *counted : lhs;
    int count = 0;
    for (const auto& [ee, c] : tally.terms()) {
      (void)c;
      if (ee < std::min(lhs.prec(), rhs.prec())) ++count;
    }
    report.coeffs_compared = count;
  } else {
    report.status = RelationStatus::Failed;
    report.mismatch = Mismatch{e, coeff_str(lhs.coeff(e)), coeff_str(rhs.coeff(e))};
  }
  return report;
}

bool unimodular_sides(const std::vector<VertexPair>& vs, size_t* bad) {
  size_t d = vs.size();
  for (size_t i = 0; i < d; ++i) {
    const VertexPair& x = vs[i];
    const VertexPair& y = vs[(i + 1) % d];
    if (x.m * y.n - y.m * x.n != 1) {
      *bad = i;
      return false;
    }
  }
  return true;
}

// Side matrix gamma_{i,i+1} = (m_{i+1}, m_i; -n_{i+1}, -n_i) sending
// 0 -> r_i = -m_i/n_i and inf -> r_{i+1}.
MatZ side_matrix(const VertexPair& x, const VertexPair& y) {
  return MatZ(y.m, x.m, -y.n, -x.n);
}

}  // namespace

QSeries lift_cap(const MatZ& gamma_r, int N, std::int64_t prec) {
  if (gamma_r.det() != 1) throw std::invalid_argument("lift_cap: determinant must be 1");
  return expand_H(to_index(gamma_r.d, N), to_index(-gamma_r.c, N), N, prec);
}

QSeries lift_unimodular(const MatZ& g, int N, std::int64_t prec) {
  if (g.det() != 1) throw std::invalid_argument("lift_unimodular: determinant must be 1");
  return -g1_product(to_index(g.d, N), to_index(g.c, N), N, prec);
}

QSeries lift_cycle(const MatZ& g, int N, std::int64_t prec) {
  if (N < 4) throw std::invalid_argument("lift_cycle: N must be >= 4");
  if (!g.in_gamma1(N)) throw std::invalid_argument("lift_cycle: matrix not in Gamma_1(N)");
  if (classify(g) == MatClass::Identity) return QSeries(N, prec * N);
  CycleDecomposition dec = decompose_cycle(g, N);
  QSeries total(N, prec * N);
  for (const auto& cap : dec.caps) {
    if (cap.coeff == 0) continue;
    total += lift_cap(cap.gamma_r, N, prec).scaled(Rat(cap.coeff));
  }
  for (const auto& sym : dec.symbols) {
    if (sym.coeff == 0) continue;
    total += lift_unimodular(sym.gamma, N, prec).scaled(Rat(sym.coeff));
  }
  return total;
}

TriangleData build_triangle(int N, const Int& n1, const Int& n2, const Int& n3) {
  if (N < 4) throw std::invalid_argument("build_triangle: N must be >= 4");
  using boost::multiprecision::gcd;
  if (gcd(mod_floor(n1, N) == 0 ? Int(N) : mod_floor(n1, N), Int(N)) != 1 ||
      gcd(mod_floor(n2, N) == 0 ? Int(N) : mod_floor(n2, N), Int(N)) != 1 ||
      gcd(mod_floor(n3, N) == 0 ? Int(N) : mod_floor(n3, N), Int(N)) != 1)
    throw std::invalid_argument("build_triangle: n_i must be coprime to N");
  if (mod_floor(n1 + n2 + n3, N) != 0)
    throw std::invalid_argument("build_triangle: n1 + n2 + n3 != 0 mod N");

  // Shift n2 by a multiple of N so that gcd(n1, n2') = 1: pick
  // k2 = (n2 - 1) N^-1 mod n1, making n2 - k2 N = 1 mod n1. Then replace n3
  // so the integer sum is exactly zero.
  Int n2s = n2;
  Int n1_abs = n1 < 0 ? -n1 : n1;
  if (n1_abs > 1) {
    auto [g, x, y] = extended_gcd(Int(N), n1_abs);
    (void)y;
    if (g != 1) throw std::logic_error("build_triangle: N not invertible mod n1");
    Int k2 = mod_floor((n2 - 1) * mod_floor(x, n1_abs), n1_abs);
    n2s = n2 - k2 * N;
  }
  if (gcd(n1 < 0 ? -n1 : n1, n2s < 0 ? -n2s : n2s) != 1)
    throw std::logic_error("build_triangle: shifted pair not coprime");
  Int n3s = -n1 - n2s;

  auto [g, x, y] = extended_gcd(n1, n2s);
  (void)g;
  // m1 n2' - m2 n1 = 1 with m1 = y, m2 = -x.
  Int m1 = y, m2 = -x;
  Int m3 = -m1 - m2;
  TriangleData t;
  t.m1 = m1;
  t.m2 = m2;
  t.m3 = m3;
  t.n1 = n1;
  t.n2 = n2s;
  t.n3 = n3s;
  t.sides = {MatZ(m2, m1, -n2s, -n1), MatZ(m3, m2, -n3s, -n2s), MatZ(m1, m3, -n1, -n3s)};
  // Caps sit at the head cusp of each side: r2, r3, r1.
  t.caps = {t.sides[0], t.sides[1], t.sides[2]};
  for (const MatZ& mat : t.sides) {
    if (mat.det() != 1) throw std::logic_error("build_triangle: side not unimodular");
  }
  return t;
}

RelationReport verify_triangle(int N, long long n1, long long n2, long long n3,
                               std::int64_t prec) {
  RelationReport report;
  report.level = N;
  report.kind = "triangle";
  report.data = std::to_string(n1) + "," + std::to_string(n2) + "," + std::to_string(n3);
  report.prec = prec;
  long long idx[3] = {mod_floor_ll(n1, N), mod_floor_ll(n2, N), mod_floor_ll(n3, N)};
  for (long long r : idx) {
    if (std::gcd(r, static_cast<long long>(N)) != 1) {
      report.reason = "n_i not coprime to N";
      return report;
    }
  }
  if ((idx[0] + idx[1] + idx[2]) % N != 0) {
    report.reason = "n1 + n2 + n3 != 0 mod N";
    return report;
  }
  report.pairwise_coprime = std::gcd(n1, n2) == 1 && std::gcd(n2, n3) == 1 &&
                            std::gcd(n3, n1) == 1;
  QSeries lhs = g1_product(idx[0], idx[1], N, prec) + g1_product(idx[1], idx[2], N, prec) +
                g1_product(idx[2], idx[0], N, prec);
  QSeries rhs = expand_G(2, idx[0], N, prec) + expand_G(2, idx[1], N, prec) +
                expand_G(2, idx[2], N, prec);
  return compare_series(std::move(report), lhs, rhs);
}

RelationReport verify_polygon(int N, const std::vector<VertexPair>& vertices,
                              std::int64_t prec) {
  RelationReport report;
  report.level = N;
  report.kind = "polygon";
  report.prec = prec;
  {
    std::ostringstream os;
    for (size_t i = 0; i < vertices.size(); ++i) os << (i ? "," : "") << vertices[i].str();
    report.data = os.str();
  }
  if (vertices.size() < 3) {
    report.reason = "polygon needs at least 3 vertices";
    return report;
  }
  for (const VertexPair& v : vertices) {
    if (v.m == 0 && v.n == 0) {
      report.reason = "vertex 0/0 is not a point";
      return report;
    }
    if (boost::multiprecision::gcd(v.m < 0 ? Int(-v.m) : v.m, v.n < 0 ? Int(-v.n) : v.n) != 1) {
      report.reason = "vertex " + v.str() + " not a coprime pair";
      return report;
    }
  }
  size_t bad = 0;
  if (!unimodular_sides(vertices, &bad)) {
    report.reason = "side " + std::to_string(bad) + " not unimodular";
    return report;
  }
  for (const VertexPair& v : vertices) {
    if (boost::multiprecision::gcd(mod_floor(v.n, N) == 0 ? Int(N) : mod_floor(v.n, N),
                                   Int(N)) != 1) {
      report.reason = "vertex " + v.str() + " has n not coprime to N";
      return report;
    }
  }
  // Corner multiplicity at vertex i: the corner arc between the two adjacent
  // sides is x_i copies of the unit cap, x_i = m_{i+1} n_{i-1} - m_{i-1} n_{i+1}.
  // Every triangle has x = (1,1,1), recovering the plain three-term relation;
  // longer unimodular polygons necessarily carry nonunit corners.
  size_t d = vertices.size();
  std::vector<Int> corners(d);
  {
    std::ostringstream os;
    for (size_t i = 0; i < d; ++i) {
      const VertexPair& prev = vertices[(i + d - 1) % d];
      const VertexPair& next = vertices[(i + 1) % d];
      corners[i] = next.m * prev.n - prev.m * next.n;
      os << (i ? "," : ";corners=") << corners[i].str();
    }
    report.data += os.str();
  }
  QSeries lhs(N, prec * N), rhs(N, prec * N);
  for (size_t i = 0; i < d; ++i) {
    long long ni = to_index(vertices[i].n, N);
    long long nj = to_index(vertices[(i + 1) % d].n, N);
    lhs += g1_product(ni, nj, N, prec);
    if (corners[i] != 0) rhs += expand_G(2, ni, N, prec).scaled(Rat(corners[i]));
  }
  return compare_series(std::move(report), lhs, rhs);
}

RelationReport boundary_zero(int N, const std::vector<VertexPair>& vertices,
                             std::int64_t prec) {
  RelationReport report = verify_polygon(N, vertices, prec);
  report.kind = "boundary-zero";
  if (report.status == RelationStatus::Rejected) return report;
  report.status = RelationStatus::Rejected;
  report.mismatch.reset();
  report.coeffs_compared = 0;

  size_t d = vertices.size();
  QSeries total(N, prec * N), side_sum(N, prec * N);
  for (size_t i = 0; i < d; ++i) {
    MatZ side = side_matrix(vertices[i], vertices[(i + 1) % d]);
    side_sum += lift_unimodular(side, N, prec);
    // cap at the head vertex r_{i+1}, with its corner multiplicity
    const VertexPair& lo = vertices[i];
    const VertexPair& hi = vertices[(i + 2) % d];
    Int x = hi.m * lo.n - lo.m * hi.n;
    if (x == 0) continue;
    QSeries cap = lift_cap(side, N, prec).scaled(Rat(x));
    total += kCapOrientation > 0 ? cap : -cap;
  }
  total += side_sum;
  return compare_series(std::move(report), total, QSeries(N, prec * N), &side_sum);
}

std::string RelationReport::to_json() const {
  nlohmann::ordered_json j;
  j["level"] = level;
  j["kind"] = kind;
  j["data"] = data;
  j["prec"] = prec;
  switch (status) {
    case RelationStatus::Verified: j["status"] = "verified"; break;
    case RelationStatus::Failed: j["status"] = "failed"; break;
    case RelationStatus::Rejected: j["status"] = "rejected"; break;
  }
  if (mismatch) {
    j["mismatch"] = {{"e", mismatch->e}, {"lhs", mismatch->lhs}, {"rhs", mismatch->rhs}};
  }
  if (!reason.empty()) j["reason"] = reason;
  if (status == RelationStatus::Verified) j["coeffs_compared"] = coeffs_compared;
  if (pairwise_coprime) j["pairwise_coprime"] = *pairwise_coprime;
  return j.dump();
}

}  // namespace eisenlift
