#include "eisenlift/qseries.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace eisenlift {

QSeries::QSeries(int level, std::int64_t prec) : level_(level), prec_(prec) {
  if (level < 1) throw std::invalid_argument("QSeries: level must be positive");
  if (prec < 1) throw std::invalid_argument("QSeries: prec must be positive");
}

QSeries QSeries::constant(int level, const CycElem& c, std::int64_t prec) {
  QSeries s(level, prec);
  s.set_coeff(0, c);
  return s;
}

QSeries QSeries::constant(int level, const Rat& c, std::int64_t prec) {
  return constant(level, CycElem(level, c), prec);
}

CycElem QSeries::coeff(std::int64_t e) const {
  if (e >= prec_) throw std::out_of_range("QSeries::coeff: exponent beyond precision");
  auto it = terms_.find(e);
  return it == terms_.end() ? CycElem(level_) : it->second;
}

void QSeries::set_coeff(std::int64_t e, const CycElem& c) {
  if (e < 0) throw std::invalid_argument("QSeries: negative exponent");
  if (e >= prec_) return;
  if (c.is_zero())
    terms_.erase(e);
  else
    terms_.insert_or_assign(e, c);
}

void QSeries::add_to_coeff(std::int64_t e, const CycElem& c) {
  if (e < 0) throw std::invalid_argument("QSeries: negative exponent");
  if (e >= prec_ || c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

QSeries QSeries::operator-() const {
  QSeries r(level_, prec_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  if (a.level_ != b.level_) throw std::invalid_argument("QSeries: level mismatch");
  QSeries r(a.level_, std::min(a.prec_, b.prec_));
  for (const auto& [e, c] : a.terms_) r.add_to_coeff(e, c);
  for (const auto& [e, c] : b.terms_) r.add_to_coeff(e, c);
  return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) {
  if (a.level_ != b.level_) throw std::invalid_argument("QSeries: level mismatch");
  QSeries r(a.level_, std::min(a.prec_, b.prec_));
  for (const auto& [e, c] : a.terms_) r.add_to_coeff(e, c);
  for (const auto& [e, c] : b.terms_) r.add_to_coeff(e, -c);
  return r;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  if (a.level_ != b.level_) throw std::invalid_argument("QSeries: level mismatch");
  // prec = min(prec_a + val_b, prec_b + val_a): beyond it, truncated tails of
  // one factor meet stored terms of the other.
  std::int64_t prec = std::min(a.prec_ + b.valuation(), b.prec_ + a.valuation());
  QSeries r(a.level_, prec);
  for (const auto& [e1, c1] : a.terms_) {
    if (e1 >= prec) break;
    for (const auto& [e2, c2] : b.terms_) {
      if (e1 + e2 >= prec) break;
      r.add_to_coeff(e1 + e2, c1 * c2);
    }
  }
  return r;
}

QSeries QSeries::scaled(const Rat& r) const { return scaled(CycElem(level_, r)); }

QSeries QSeries::scaled(const CycElem& c) const {
  QSeries out(level_, prec_);
  if (c.is_zero()) return out;
  for (const auto& [e, x] : terms_) out.set_coeff(e, x * c);
  return out;
}

QSeries QSeries::scale_exponents(std::int64_t k) const {
  if (k < 1) throw std::invalid_argument("QSeries::scale_exponents: k must be positive");
  QSeries out(level_, prec_ * k);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e * k, c);
  return out;
}

QSeries QSeries::truncated(std::int64_t prec) const {
  QSeries out(level_, std::min(prec, prec_));
  for (const auto& [e, c] : terms_) {
    if (e >= out.prec_) break;
    out.terms_.emplace(e, c);
  }
  return out;
}

QSeries QSeries::invert() const {
  auto it = terms_.find(0);
  if (it == terms_.end()) throw std::invalid_argument("QSeries::invert: zero constant term");
  CycElem a0inv = it->second.inverse();
  QSeries out(level_, prec_);
  out.set_coeff(0, a0inv);
  for (std::int64_t e = 1; e < prec_; ++e) {
    CycElem acc(level_);
    for (const auto& [j, aj] : terms_) {
      if (j == 0) continue;
      if (j > e) break;
      auto bit = out.terms_.find(e - j);
      if (bit != out.terms_.end()) acc += aj * bit->second;
    }
    if (!acc.is_zero()) out.set_coeff(e, -(a0inv * acc));
  }
  return out;
}

QSeries QSeries::q_ddq() const {
  QSeries out(level_, prec_);
  for (const auto& [e, c] : terms_) {
    if (e == 0) continue;
    out.set_coeff(e, c * Rat(Int(e), Int(level_)));
  }
  return out;
}

bool QSeries::equal_up_to_min_prec(const QSeries& a, const QSeries& b) {
  return first_mismatch(a, b) < 0;
}

std::int64_t QSeries::first_mismatch(const QSeries& a, const QSeries& b) {
  if (a.level_ != b.level_) throw std::invalid_argument("QSeries: level mismatch");
  std::int64_t prec = std::min(a.prec_, b.prec_);
  auto ia = a.terms_.begin(), ib = b.terms_.begin();
  while (true) {
    while (ia != a.terms_.end() && ia->first >= prec) ia = a.terms_.end();
    while (ib != b.terms_.end() && ib->first >= prec) ib = b.terms_.end();
    if (ia == a.terms_.end() && ib == b.terms_.end()) return -1;
    if (ia == a.terms_.end()) return ib->first;
    if (ib == b.terms_.end()) return ia->first;
    if (ia->first < ib->first) return ia->first;
    if (ib->first < ia->first) return ib->first;
    if (ia->second != ib->second) return ia->first;
    ++ia;
    ++ib;
  }
}

bool QSeries::rational_coefficients() const {
  for (const auto& [e, c] : terms_)
    if (!c.is_rational()) return false;
  return true;
}

std::string QSeries::to_json() const {
  nlohmann::ordered_json j;
  j["N"] = level_;
  j["prec"] = prec_;
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& [e, c] : terms_) {
    nlohmann::ordered_json t;
    t["e"] = e;
    t["c"] = c.to_strings();
    j["terms"].push_back(std::move(t));
  }
  return j.dump();
}

QSeries QSeries::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  QSeries s(j.at("N").get<int>(), j.at("prec").get<std::int64_t>());
  for (const auto& t : j.at("terms")) {
    s.set_coeff(t.at("e").get<std::int64_t>(),
                CycElem::from_strings(s.level_, t.at("c").get<std::vector<std::string>>()));
  }
  return s;
}

namespace {

std::string coeff_text(const CycElem& c, bool* negated) {
  *negated = false;
  if (c.is_rational()) {
    Rat r = c.rat_value();
    if (r < Rat(0)) {
      *negated = true;
      r = -r;
    }
    if (r.is_integer()) return r.num().str();
    return r.num().str() + "/" + r.den().str();
  }
  return "(" + c.str() + ")";
}

}  // namespace

std::string QSeries::to_text() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool neg = false;
    std::string cs = coeff_text(c, &neg);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (e == 0) {
      os << cs;
      continue;
    }
    std::string power;
    if (e % level_ == 0) {
      std::int64_t j = e / level_;
      power = (j == 1) ? "q" : "q^" + std::to_string(j);
    } else {
      Rat ex{Int(e), Int(level_)};
      power = "q^(" + ex.num().str() + "/" + ex.den().str() + ")";
    }
    if (cs == "1")
      os << power;
    else
      os << cs << "*" << power;
  }
  return os.str();
}

}  // namespace eisenlift
