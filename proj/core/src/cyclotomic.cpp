#include "eisenlift/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace eisenlift {

namespace {

// Polynomials as ascending coefficient vectors over Rat.
using Poly = std::vector<Rat>;

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Exact division; requires the remainder to vanish and b monic-led.
Poly poly_div_exact(Poly a, const Poly& b) {
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rat lead = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] = lead;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= lead * b[i];
    trim(a);
  }
  if (!a.empty()) throw std::logic_error("poly_div_exact: nonzero remainder");
  return q;
}

std::mutex g_phi_mutex;
std::map<int, Poly> g_phi_cache;

Poly compute_cyclotomic(int n) {
  // x^n - 1 divided by Phi_d for all proper divisors d of n.
  Poly num(n + 1, Rat(0));
  num[0] = Rat(-1);
  num[n] = Rat(1);
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) num = poly_div_exact(std::move(num), cyclotomic_poly(d));
  }
  return num;
}

}  // namespace

int euler_phi(int n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

const std::vector<Rat>& cyclotomic_poly(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be positive");
  {
    std::lock_guard<std::mutex> lock(g_phi_mutex);
    auto it = g_phi_cache.find(n);
    if (it != g_phi_cache.end()) return it->second;
  }
  // Computed outside the lock; recursion on divisors re-enters this function.
  Poly phi = compute_cyclotomic(n);
  std::lock_guard<std::mutex> lock(g_phi_mutex);
  return g_phi_cache.emplace(n, std::move(phi)).first->second;
}

CycElem::CycElem(int level) : level_(level) {
  if (level < 1) throw std::invalid_argument("CycElem: level must be positive");
  c_.assign(euler_phi(level), Rat(0));
}

CycElem::CycElem(int level, const Rat& value) : CycElem(level) { c_[0] = value; }

CycElem::CycElem(int level, std::vector<Rat> coeffs) : level_(level) {
  if (level < 1) throw std::invalid_argument("CycElem: level must be positive");
  const Poly& phi = cyclotomic_poly(level);
  const size_t deg = phi.size() - 1;
  // Reduce modulo Phi_N (monic): replace the leading term repeatedly.
  while (coeffs.size() > deg) {
    Rat lead = coeffs.back();
    coeffs.pop_back();
    if (!lead.is_zero()) {
      size_t shift = coeffs.size() - deg;
      for (size_t i = 0; i < deg; ++i) coeffs[shift + i] -= lead * phi[i];
    }
  }
  coeffs.resize(deg, Rat(0));
  c_ = std::move(coeffs);
}

CycElem CycElem::zeta_pow(int level, long long e) {
  long long r = mod_floor_ll(e, level);
  std::vector<Rat> coeffs(static_cast<size_t>(r) + 1, Rat(0));
  coeffs.back() = Rat(1);
  return CycElem(level, std::move(coeffs));
}

bool CycElem::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

bool CycElem::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

Rat CycElem::rat_value() const {
  if (!is_rational()) throw std::logic_error("CycElem::rat_value: element not rational");
  return c_[0];
}

CycElem CycElem::operator-() const {
  CycElem r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

CycElem& CycElem::operator+=(const CycElem& o) {
  if (level_ != o.level_) throw std::invalid_argument("CycElem: level mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycElem& CycElem::operator-=(const CycElem& o) {
  if (level_ != o.level_) throw std::invalid_argument("CycElem: level mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycElem operator*(const CycElem& a, const CycElem& b) {
  if (a.level_ != b.level_) throw std::invalid_argument("CycElem: level mismatch");
  std::vector<Rat> prod(a.c_.size() + b.c_.size(), Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      prod[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return CycElem(a.level_, std::move(prod));
}

CycElem& CycElem::operator*=(const Rat& r) {
  for (auto& x : c_) x *= r;
  return *this;
}

CycElem CycElem::inverse() const {
  if (is_zero()) throw std::invalid_argument("CycElem::inverse: zero element");
  if (is_rational()) return CycElem(level_, Rat(1) / c_[0]);
  // Extended Euclid in Q[x]: u*f + v*Phi = gcd = const, so u/const is 1/f.
  Poly r0 = cyclotomic_poly(level_);
  Poly r1 = c_;
  trim(r1);
  Poly s0{}, s1{Rat(1)};  // s tracks the f-cofactor
  while (!(r1.size() == 1)) {
    // Divide r0 by r1.
    Poly q(r0.size() - r1.size() + 1, Rat(0));
    Poly rem = r0;
    while (rem.size() >= r1.size() && !rem.empty()) {
      Rat lead = rem.back() / r1.back();
      size_t shift = rem.size() - r1.size();
      q[shift] += lead;
      for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= lead * r1[i];
      trim(rem);
    }
    if (rem.empty()) throw std::logic_error("CycElem::inverse: Phi_N not coprime to element");
    // s_next = s0 - q*s1
    Poly snext(std::max(s0.size(), q.size() + s1.size()), Rat(0));
    for (size_t i = 0; i < s0.size(); ++i) snext[i] += s0[i];
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i].is_zero()) continue;
      for (size_t j = 0; j < s1.size(); ++j) snext[i + j] -= q[i] * s1[j];
    }
    trim(snext);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(snext);
  }
  Rat inv_const = Rat(1) / r1[0];
  for (auto& x : s1) x *= inv_const;
  return CycElem(level_, std::move(s1));
}

std::vector<std::string> CycElem::to_strings() const {
  std::vector<std::string> out;
  out.reserve(c_.size());
  for (const auto& x : c_) out.push_back(x.str());
  return out;
}

CycElem CycElem::from_strings(int level, const std::vector<std::string>& parts) {
  if (parts.size() != static_cast<size_t>(euler_phi(level)))
    throw std::invalid_argument("CycElem::from_strings: wrong coefficient count");
  std::vector<Rat> coeffs;
  coeffs.reserve(parts.size());
  for (const auto& s : parts) coeffs.push_back(Rat::parse(s));
  return CycElem(level, std::move(coeffs));
}

std::string CycElem::str() const {
  if (is_rational()) return c_[0].str();
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    os << c_[i].str();
    if (i == 1) os << "*z";
    if (i > 1) os << "*z^" << i;
    first = false;
  }
  return os.str();
}

}  // namespace eisenlift
