#include "eisenlift/modsym.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace eisenlift {

namespace {

Int gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

Int ceil_div(const Int& a, const Int& c) {
  // ceil(a/c) for c > 0
  Int q = a / c;
  if (q * c < a) q += 1;
  return q;
}

void require_unimodular(const MatZ& g, const char* where) {
  if (g.det() != 1) throw std::invalid_argument(std::string(where) + ": determinant must be 1");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

MatZ MatZ::pow(unsigned long long e) const {
  MatZ result;
  MatZ base = *this;
  while (e > 0) {
    if (e & 1ULL) result = result * base;
    base = base * base;
    e >>= 1ULL;
  }
  return result;
}

bool MatZ::in_gamma1(int N) const {
  return det() == 1 && mod_floor(a - 1, N) == 0 && mod_floor(d - 1, N) == 0 &&
         mod_floor(c, N) == 0;
}

std::string MatZ::str() const {
  return a.str() + "," + b.str() + "," + c.str() + "," + d.str();
}

MatZ MatZ::parse(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 4) throw std::invalid_argument("MatZ::parse: expected a,b,c,d");
  return MatZ(Int(parts[0]), Int(parts[1]), Int(parts[2]), Int(parts[3]));
}

Cusp::Cusp(Int m_, Int n_) : m(std::move(m_)), n(std::move(n_)) {
  if (m == 0 && n == 0) throw std::invalid_argument("Cusp: [0:0] is not a point");
  Int g = gcd(m < 0 ? -m : m, n < 0 ? -n : n);
  m /= g;
  n /= g;
  if (n < 0 || (n == 0 && m < 0)) {
    m = -m;
    n = -n;
  }
}

std::string Cusp::str() const {
  if (is_infinity()) return "inf";
  return m.str() + "/" + n.str();
}

Cusp Cusp::parse(const std::string& s) {
  if (s == "inf" || s == "oo") return Cusp::infinity();
  auto slash = s.find('/');
  if (slash == std::string::npos) return Cusp(Int(s), 1);
  return Cusp(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

Cusp apply(const MatZ& g, const Cusp& r) { return Cusp(g.a * r.m + g.b * r.n, g.c * r.m + g.d * r.n); }

MatClass classify(const MatZ& g) {
  require_unimodular(g, "classify");
  if ((g.a == 1 && g.b == 0 && g.c == 0 && g.d == 1) ||
      (g.a == -1 && g.b == 0 && g.c == 0 && g.d == -1))
    return MatClass::Identity;
  Int t = g.trace();
  if (t < 0) t = -t;
  if (t > 2) return MatClass::Hyperbolic;
  if (t == 2) return MatClass::Parabolic;
  return MatClass::Elliptic;
}

MinusCF minus_cf(const Int& a, const Int& c) {
  if (c == 0) throw std::invalid_argument("minus_cf: c must be nonzero");
  Int aa = a, cc = c;
  if (cc < 0) {
    aa = -aa;
    cc = -cc;
  }
  if (gcd(aa < 0 ? -aa : aa, cc) != 1) throw std::invalid_argument("minus_cf: gcd(a,c) != 1");
  MinusCF cf;
  // a/c = b0 - 1/(b1 - 1/(...)): num/den -> den/(b*den - num) after peeling b.
  Int num = aa, den = cc;
  while (true) {
    Int b = ceil_div(num, den);
    cf.b.push_back(b);
    Int next = b * den - num;
    num = den;
    den = next;
    if (den == 0) break;
  }
  cf.p = {Int(1), cf.b[0]};
  cf.q = {Int(0), Int(1)};
  for (size_t k = 1; k < cf.b.size(); ++k) {
    cf.p.push_back(cf.b[k] * cf.p.back() - cf.p[cf.p.size() - 2]);
    cf.q.push_back(cf.b[k] * cf.q.back() - cf.q[cf.q.size() - 2]);
  }
  return cf;
}

MatZ gamma_k(const MinusCF& cf, long long k) {
  if (k < -1 || k > cf.n()) throw std::out_of_range("gamma_k: index out of range");
  if (k == -1) return MatZ::identity();
  return MatZ(-cf.pk(k), cf.pk(k - 1), -cf.qk(k), cf.qk(k - 1));
}

ParabolicData parabolic_data(const MatZ& g) {
  if (classify(g) != MatClass::Parabolic)
    throw std::invalid_argument("parabolic_data: matrix is not parabolic");
  Cusp r = g.c == 0 ? Cusp::infinity() : Cusp(g.a - g.d, 2 * g.c);
  MatZ gr = matrix_for_cusp(r);
  MatZ con = gr.inverse() * g * gr;
  // con = +-(1, b; 0, 1); normalize the sign so the diagonal is (1,1).
  Int b = con.a == 1 ? con.b : -con.b;
  return ParabolicData{r, gr, b};
}

CycleDecomposition decompose_cycle(const MatZ& g, int N) {
  if (N < 4) throw std::invalid_argument("decompose_cycle: N must be >= 4");
  if (!g.in_gamma1(N)) throw std::invalid_argument("decompose_cycle: matrix not in Gamma_1(N)");
  MatClass cls = classify(g);
  if (cls == MatClass::Identity) throw std::invalid_argument("decompose_cycle: identity cycle");
  if (cls == MatClass::Elliptic)
    throw std::invalid_argument("decompose_cycle: elliptic matrix (impossible in Gamma_1(N))");

  CycleDecomposition dec;
  dec.source = g;
  if (cls == MatClass::Parabolic) {
    dec.kind = CycleKind::Parabolic;
    ParabolicData pd = parabolic_data(g);
    dec.caps.push_back(CapTerm{pd.r, pd.gamma_r, pd.b});
    return dec;
  }

  dec.kind = CycleKind::Hyperbolic;
  // Hyperbolic in Gamma_1(N) forces c != 0: c = 0 with det 1 gives |tr| = 2.
  if (g.c == 0) throw std::logic_error("decompose_cycle: hyperbolic with c = 0");
  MinusCF cf = minus_cf(g.a, g.c);
  long long n = cf.n();
  int s = g.c > 0 ? 1 : -1;
  Int m = cf.pk(n - 1) * g.d - g.b * cf.qk(n - 1);
  dec.caps.push_back(CapTerm{Cusp::infinity(), MatZ::identity(), cf.b[0] + s * m});
  for (long long k = 0; k < n; ++k) {
    MatZ gk = gamma_k(cf, k);
    dec.caps.push_back(CapTerm{Cusp(cf.pk(k), cf.qk(k)), gk, cf.b[static_cast<size_t>(k) + 1]});
  }
  for (long long k = 0; k <= n; ++k) {
    dec.symbols.push_back(SymbolTerm{gamma_k(cf, k), Int(1)});
  }
  dec.cf = std::move(cf);
  return dec;
}

std::string CycleDecomposition::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = kind == CycleKind::Parabolic ? "parabolic" : "hyperbolic";
  j["source"] = source.str();
  j["caps"] = nlohmann::ordered_json::array();
  for (const auto& cap : caps) {
    j["caps"].push_back({{"cusp", cap.cusp.str()}, {"gamma_r", cap.gamma_r.str()},
                         {"coeff", cap.coeff.str()}});
  }
  j["symbols"] = nlohmann::ordered_json::array();
  for (const auto& sym : symbols) {
    j["symbols"].push_back({{"gamma", sym.gamma.str()}, {"coeff", sym.coeff.str()}});
  }
  if (cf) {
    nlohmann::ordered_json jcf;
    jcf["b"] = nlohmann::ordered_json::array();
    jcf["p"] = nlohmann::ordered_json::array();
    jcf["q"] = nlohmann::ordered_json::array();
    for (const auto& x : cf->b) jcf["b"].push_back(x.str());
    for (const auto& x : cf->p) jcf["p"].push_back(x.str());
    for (const auto& x : cf->q) jcf["q"].push_back(x.str());
    j["cf"] = std::move(jcf);
  }
  return j.dump();
}

bool cusp_equivalent(int N, const Cusp& c1, const Cusp& c2) {
  if (N < 4) throw std::invalid_argument("cusp_equivalent: N must be >= 4");
  Int m1 = mod_floor(c1.m, N), n1 = mod_floor(c1.n, N);
  Int m2 = mod_floor(c2.m, N), n2 = mod_floor(c2.n, N);
  for (int sign = 0; sign < 2; ++sign) {
    Int sm = sign == 0 ? m2 : mod_floor(-m2, N);
    Int sn = sign == 0 ? n2 : mod_floor(-n2, N);
    if (sn != n1) continue;
    for (Int j = 0; j < N; ++j) {
      if (mod_floor(m1 + j * n1, N) == sm) return true;
    }
  }
  return false;
}

MatZ matrix_for_cusp(const Cusp& r) {
  if (r.is_infinity()) return MatZ::identity();
  // (m, i; n, j) with m j - i n = 1: from m x + n y = 1 take j = x, i = -y;
  // the solution set is (i, j) + t (m, n). Minimize |i|, ties toward i >= 0.
  auto [g, x, y] = extended_gcd(r.m, r.n);
  (void)g;
  Int i0 = -y, j0 = x;
  if (r.m != 0) {
    Int t = -i0 / r.m;
    Int best_i = i0, best_j = j0;
    bool have = false;
    for (int dt = -2; dt <= 2; ++dt) {
      Int ii = i0 + (t + dt) * r.m;
      Int jj = j0 + (t + dt) * r.n;
      Int abs_ii = ii < 0 ? -ii : ii;
      Int abs_best = best_i < 0 ? -best_i : best_i;
      if (!have || abs_ii < abs_best || (abs_ii == abs_best && ii > best_i)) {
        best_i = ii;
        best_j = jj;
        have = true;
      }
    }
    i0 = best_i;
    j0 = best_j;
  }
  return MatZ(r.m, i0, r.n, j0);
}

std::map<Cusp, Int> ModularSymbolSum::boundary() const {
  std::map<Cusp, Int> formal;
  for (const auto& term : terms) {
    formal[apply(term.gamma, Cusp::infinity())] += term.coeff;
    formal[apply(term.gamma, Cusp(0, 1))] -= term.coeff;
  }
  for (auto it = formal.begin(); it != formal.end();) {
    if (it->second == 0)
      it = formal.erase(it);
    else
      ++it;
  }
  return formal;
}

namespace {

// Chain of unimodular symbols with boundary r - inf, empty when r = inf.
std::vector<MatZ> chain_from_infinity(const Cusp& r) {
  std::vector<MatZ> out;
  if (r.is_infinity()) return out;
  if (r.n == 0) return out;
  MinusCF cf = minus_cf(r.m, r.n);
  for (long long k = 0; k <= cf.n(); ++k) out.push_back(gamma_k(cf, k));
  return out;
}

}  // namespace

ModularSymbolSum reduce_symbol(const Cusp& r1, const Cusp& r2) {
  if (r1 == r2) throw std::invalid_argument("reduce_symbol: equal endpoints");
  std::vector<SymbolTerm> raw;
  for (const MatZ& g : chain_from_infinity(r2)) raw.push_back(SymbolTerm{g, Int(1)});
  for (const MatZ& g : chain_from_infinity(r1)) raw.push_back(SymbolTerm{g, Int(-1)});
  // Combine equal matrices, then orient: -c gamma {0,inf} = c (gamma S) {0,inf}
  // with S = (0,-1;1,0).
  ModularSymbolSum sum;
  for (auto& term : raw) {
    bool merged = false;
    for (auto& have : sum.terms) {
      if (have.gamma == term.gamma) {
        have.coeff += term.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) sum.terms.push_back(term);
  }
  std::erase_if(sum.terms, [](const SymbolTerm& t) { return t.coeff == 0; });
  const MatZ S(0, -1, 1, 0);
  for (auto& term : sum.terms) {
    if (term.coeff < 0) {
      term.gamma = term.gamma * S;
      term.coeff = -term.coeff;
    }
  }
  return sum;
}

MatZ hecke_sigma(const Int& a, int N) {
  if (N < 1) throw std::invalid_argument("hecke_sigma: N must be positive");
  Int ar = mod_floor(a, N);
  if (gcd(ar, N) != 1) throw std::invalid_argument("hecke_sigma: gcd(a, N) != 1");
  if (a == 1) return MatZ::identity();
  Int N2 = Int(N) * N;
  auto [g, x, y] = extended_gcd(mod_floor(a, N2), N2);
  (void)y;
  Int inv = mod_floor(x, N2);  // a^-1 mod N^2
  return MatZ(inv, N, (inv * a - 1) / N, a);
}

std::vector<MatZ> hecke_reps(const Int& n, int N) {
  if (n < 1) throw std::invalid_argument("hecke_reps: n must be >= 1");
  std::vector<MatZ> reps;
  for (Int a = 1; a <= n; ++a) {
    if (n % a != 0) continue;
    if (gcd(mod_floor(a, N), N) != 1) continue;
    Int d = n / a;
    MatZ sigma = hecke_sigma(a, N);
    for (Int b = 0; b < d; ++b) reps.push_back(sigma * MatZ(a, b, 0, d));
  }
  return reps;
}

}  // namespace eisenlift
