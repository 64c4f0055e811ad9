#include "eisenlift/eisenstein.hpp"

#include <filesystem>
#include <fstream>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace eisenlift {

namespace {

const char* tag_name(EisensteinID::Tag t) {
  switch (t) {
    case EisensteinID::Tag::E: return "E";
    case EisensteinID::Tag::E2_00: return "E2_00";
    case EisensteinID::Tag::Ehat: return "Ehat";
    case EisensteinID::Tag::G: return "G";
    case EisensteinID::Tag::Ghat2: return "Ghat2";
    case EisensteinID::Tag::H: return "H";
    case EisensteinID::Tag::SiegelLogDeriv: return "siegel";
  }
  return "?";
}

// In-memory expansion cache, keyed by (EisensteinID, prec). Concurrent reads
// share the lock; fills are idempotent (recomputation yields the same value).
std::shared_mutex g_cache_mutex;
std::unordered_map<std::string, QSeries> g_cache;
std::string g_cache_dir;

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string disk_path(const std::string& dir, const std::string& key) {
  std::ostringstream os;
  os << std::hex << fnv1a64(key);
  return dir + "/" + os.str() + ".json";
}

template <typename Fn>
QSeries cached(const EisensteinID& id, std::int64_t prec, Fn&& compute) {
  std::string key = id.key() + "|prec=" + std::to_string(prec);
  std::string dir;
  {
    std::shared_lock lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
    dir = g_cache_dir;
  }
  if (!dir.empty()) {
    std::ifstream in(disk_path(dir, key));
    if (in) {
      std::ostringstream buf;
      buf << in.rdbuf();
      try {
        QSeries s = QSeries::from_json(buf.str());
        std::unique_lock lock(g_cache_mutex);
        g_cache.emplace(key, s);
        return s;
      } catch (const std::exception&) {
        // unreadable document: fall through and recompute
      }
    }
  }
  QSeries s = compute();
  if (!dir.empty()) {
    std::string path = disk_path(dir, key);
    if (!std::filesystem::exists(path)) {
      // write-then-rename keeps concurrent readers off partial documents
      std::string tmp = path + ".tmp";
      {
        std::ofstream out(tmp, std::ios::trunc);
        out << s.to_json();
      }
      std::error_code ec;
      std::filesystem::rename(tmp, path, ec);
      if (ec) std::filesystem::remove(tmp, ec);
    }
  }
  std::unique_lock lock(g_cache_mutex);
  auto [it, inserted] = g_cache.emplace(key, std::move(s));
  return it->second;
}

// Constant term of the expansion of E^(k)_{p,q} with p,q reduced into [0,N).
CycElem e_constant(int k, long long p, long long q, int N) {
  if (k == 1) {
    if (p == 0) {
      // (1/2)(1+zeta^q)/(1-zeta^q), q != 0
      CycElem zq = zeta_pow(N, q);
      CycElem one(N, Rat(1));
      return ((one + zq) * (one - zq).inverse()) * Rat(1, 2);
    }
    return CycElem(N, -bernoulli(1, Rat(p, N)));
  }
  return CycElem(N, -bernoulli(2, Rat(p, N)) * Rat(1, 2));
}

// The two divisor-type double sums of the Fourier expansion, added into out:
// N^(1-k) * ( sum_{m,n>=1, n=p (N)} zeta^(mq) n^(k-1) q^(mn/N)
//           + (-1)^k sum_{m,n>=1, n=-p (N)} zeta^(-mq) n^(k-1) q^(mn/N) ).
void add_divisor_sums(QSeries& out, int k, long long p, long long q, int N, std::int64_t prec) {
  const Rat norm = (k == 1) ? Rat(1) : Rat(1, N);
  for (int half = 0; half < 2; ++half) {
    long long residue = half == 0 ? p : mod_floor_ll(-p, N);
    long long zsign = half == 0 ? q : mod_floor_ll(-q, N);
    Rat sign = (half == 1 && k == 1) ? Rat(-1) : Rat(1);
    for (std::int64_t n = (residue == 0) ? N : residue; n < prec; n += N) {
      Rat weight = norm * sign * (k == 1 ? Rat(1) : Rat(Int(n), Int(1)));
      for (std::int64_t m = 1; m * n < prec; ++m) {
        out.add_to_coeff(m * n, zeta_pow(N, zsign * m) * weight);
      }
    }
  }
}

void require_level(int N) {
  if (N < 1) throw std::invalid_argument("level must be positive");
}

}  // namespace

std::string EisensteinID::key() const {
  std::ostringstream os;
  os << tag_name(tag) << "|N=" << level;
  switch (tag) {
    case Tag::E:
    case Tag::Ehat:
      os << "|k=" << k << "|" << i1 << "," << i2;
      break;
    case Tag::G:
      os << "|k=" << k << "|" << i1;
      break;
    case Tag::Ghat2:
      os << "|" << i1;
      break;
    case Tag::H:
    case Tag::SiegelLogDeriv:
      os << "|" << i1 << "," << i2;
      break;
    case Tag::E2_00:
      break;
  }
  return os.str();
}

std::optional<EisensteinID> EisensteinID::parse(const std::string& name, int level, int k,
                                                long long i1, long long i2) {
  EisensteinID id;
  id.level = level;
  id.k = k;
  id.i1 = mod_floor_ll(i1, level);
  id.i2 = mod_floor_ll(i2, level);
  if (name == "E") id.tag = Tag::E;
  else if (name == "E2_00") id.tag = Tag::E2_00;
  else if (name == "Ehat") id.tag = Tag::Ehat;
  else if (name == "G") id.tag = Tag::G;
  else if (name == "Ghat2") id.tag = Tag::Ghat2;
  else if (name == "H") id.tag = Tag::H;
  else if (name == "siegel") id.tag = Tag::SiegelLogDeriv;
  else return std::nullopt;
  // Forbidden index combinations are unrepresentable through this entry point.
  if (id.tag == Tag::E && k == 1 && id.i1 == 0 && id.i2 == 0) return std::nullopt;
  if (id.tag == Tag::SiegelLogDeriv && id.i1 == 0 && id.i2 == 0) return std::nullopt;
  return id;
}

QSeries expand_E(int k, long long p, long long q, int N, std::int64_t prec) {
  require_level(N);
  if (k != 1 && k != 2) throw std::invalid_argument("expand_E: k must be 1 or 2");
  if (prec < 1) throw std::invalid_argument("expand_E: prec must be >= 1");
  long long pr = mod_floor_ll(p, N), qr = mod_floor_ll(q, N);
  if (pr == 0 && qr == 0)
    throw std::invalid_argument("expand_E: (p,q) = (0,0); use expand_E2_00 for the k=2 case");
  EisensteinID id{EisensteinID::Tag::E, N, k, pr, qr};
  return cached(id, prec, [&] {
    QSeries s(N, prec);
    s.set_coeff(0, e_constant(k, pr, qr, N));
    add_divisor_sums(s, k, pr, qr, N, prec);
    return s;
  });
}

QSeries expand_E2_00(int N, std::int64_t prec) {
  require_level(N);
  if (prec < 1) throw std::invalid_argument("expand_E2_00: prec must be >= 1");
  EisensteinID id{EisensteinID::Tag::E2_00, N, 2, 0, 0};
  return cached(id, prec, [&] {
    QSeries s(N, prec);
    s.set_coeff(0, CycElem(N, Rat(-1, 12)));
    // 2 sum_{n>=1} sigma_1(n) q^n at exponent numerators N*n.
    std::int64_t nmax = (prec - 1) / N;
    std::vector<Int> sigma(static_cast<size_t>(nmax) + 1, Int(0));
    for (std::int64_t d = 1; d <= nmax; ++d)
      for (std::int64_t n = d; n <= nmax; n += d) sigma[static_cast<size_t>(n)] += d;
    for (std::int64_t n = 1; n <= nmax; ++n)
      s.set_coeff(N * n, CycElem(N, Rat(Int(2 * sigma[static_cast<size_t>(n)]))));
    return s;
  });
}

QSeries expand_G(int k, long long r, int N, std::int64_t prec) {
  require_level(N);
  if (k != 1 && k != 2) throw std::invalid_argument("expand_G: k must be 1 or 2");
  if (prec < 1) throw std::invalid_argument("expand_G: prec must be >= 1");
  long long rr = mod_floor_ll(r, N);
  EisensteinID id{EisensteinID::Tag::G, N, k, rr, 0};
  return cached(id, prec * N, [&] {
    if (k == 1 && rr == 0) return QSeries(N, prec * N);  // E^(1)_{0,0} vanishes
    QSeries inner = (k == 2 && rr == 0) ? expand_E2_00(N, prec) : expand_E(k, rr, 0, N, prec);
    return inner.scale_exponents(N);
  });
}

QSeries expand_Ehat(int k, long long a, long long b, int N, std::int64_t prec) {
  require_level(N);
  if (k != 1 && k != 2) throw std::invalid_argument("expand_Ehat: k must be 1 or 2");
  if (prec < 1) throw std::invalid_argument("expand_Ehat: prec must be >= 1");
  long long ar = mod_floor_ll(a, N), br = mod_floor_ll(b, N);
  EisensteinID id{EisensteinID::Tag::Ehat, N, k, ar, br};
  return cached(id, prec, [&] {
    QSeries acc(N, prec);
    for (long long u = 0; u < N; ++u) {
      for (long long v = 0; v < N; ++v) {
        QSeries term = (u == 0 && v == 0)
                           ? (k == 1 ? QSeries(N, prec) : expand_E2_00(N, prec))
                           : expand_E(k, u, v, N, prec);
        acc += term.scaled(zeta_pow(N, br * u - ar * v));
      }
    }
    // N^(k-2)
    if (k == 1) acc = acc.scaled(Rat(1, N));
    return acc;
  });
}

QSeries expand_Ghat2(long long p, int N, std::int64_t prec) {
  require_level(N);
  if (prec < 1) throw std::invalid_argument("expand_Ghat2: prec must be >= 1");
  long long pr = mod_floor_ll(p, N);
  EisensteinID id{EisensteinID::Tag::Ghat2, N, 2, pr, 0};
  return cached(id, prec * N, [&] {
    return expand_Ehat(2, pr, 0, N, prec).scale_exponents(N);
  });
}

QSeries expand_H(long long p, long long q, int N, std::int64_t prec) {
  require_level(N);
  if (prec < 1) throw std::invalid_argument("expand_H: prec must be >= 1");
  long long pr = mod_floor_ll(p, N), qr = mod_floor_ll(q, N);
  if (qr != 0) return expand_G(2, qr, N, prec);
  EisensteinID id{EisensteinID::Tag::H, N, 2, pr, 0};
  return cached(id, prec * N, [&] {
    return expand_G(2, 0, N, prec) - expand_Ghat2(pr, N, prec);
  });
}

QSeries siegel_log_deriv(long long a, long long b, int N, std::int64_t prec) {
  require_level(N);
  if (prec < 1) throw std::invalid_argument("siegel_log_deriv: prec must be >= 1");
  long long ar = mod_floor_ll(a, N), br = mod_floor_ll(b, N);
  if (ar == 0 && br == 0) throw std::invalid_argument("siegel_log_deriv: (a,b) = (0,0)");
  EisensteinID id{EisensteinID::Tag::SiegelLogDeriv, N, 0, ar, br};
  return cached(id, prec, [&] {
    QSeries s(N, prec);
    // Prefactor q^(B_2({a/N})/2) contributes the constant; the root-of-unity
    // prefactor has zero logarithmic derivative.
    s.set_coeff(0, CycElem(N, bernoulli(2, Rat(ar, N)) * Rat(1, 2)));
    // q d/dq log(1 - q^(e/N) zeta^b) = -sum_{m>=1} (e/N) q^(em/N) zeta^(bm),
    // over product factors with e = a, a+N, a+2N, ... and e = N-a, 2N-a, ...
    for (int half = 0; half < 2; ++half) {
      long long residue = half == 0 ? ar : mod_floor_ll(-ar, N);
      long long zexp = half == 0 ? br : mod_floor_ll(-br, N);
      for (std::int64_t e = (residue == 0) ? N : residue; e < prec; e += N) {
        Rat weight = Rat(-Int(e), Int(N));
        for (std::int64_t m = 1; m * e < prec; ++m) {
          s.add_to_coeff(m * e, zeta_pow(N, zexp * m) * weight);
        }
      }
    }
    return s;
  });
}

void set_series_cache_dir(const std::string& dir) {
  std::unique_lock lock(g_cache_mutex);
  g_cache_dir = dir;
  if (!dir.empty()) std::filesystem::create_directories(dir);
}

std::string series_cache_dir() {
  std::shared_lock lock(g_cache_mutex);
  return g_cache_dir;
}

void clear_series_cache() {
  std::unique_lock lock(g_cache_mutex);
  g_cache.clear();
}

}  // namespace eisenlift
