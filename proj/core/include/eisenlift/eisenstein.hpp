#pragma once

#include <optional>
#include <string>

#include "eisenlift/qseries.hpp"

namespace eisenlift {

/// Identifier for a cached expansion. Indices are stored reduced mod N.
struct EisensteinID {
  enum class Tag { E, E2_00, Ehat, G, Ghat2, H, SiegelLogDeriv };
  Tag tag;
  int level;
  int k = 0;             // weight, where applicable
  long long i1 = 0;      // (p|r|a) reduced mod N
  long long i2 = 0;      // (q|b) reduced mod N

  std::string key() const;
  static std::optional<EisensteinID> parse(const std::string& tag_name, int level, int k,
                                           long long i1, long long i2);
};

/// Holomorphic expansion of E^(k)_{p,q} at level N, exact for exponent
/// numerators < prec (the term c*q^(e/N) is stored at e; the double sum runs
/// over m,n >= 1 with mn < prec). Rejects (p,q) == (0,0) mod N.
QSeries expand_E(int k, long long p, long long q, int N, std::int64_t prec);

/// Holomorphic part of the regularized weight-2 series at (0,0):
/// -1/12 + 2 sum sigma_1(n) q^n, stored at exponent numerators N*n < prec.
QSeries expand_E2_00(int N, std::int64_t prec);

/// G^(k)_r = E^(k)_{r,0}(N tau): integer q-powers; prec counts q-powers.
/// G^(1)_0 is the zero series; G^(2)_0 comes from expand_E2_00.
QSeries expand_G(int k, long long r, int N, std::int64_t prec);

/// Finite Fourier transform N^(k-2) sum_{u,v} zeta^(bu-av) E^(k)_{u,v},
/// with the (0,0) summand 0 for k=1 and expand_E2_00 for k=2.
/// Exact for exponent numerators < prec.
QSeries expand_Ehat(int k, long long a, long long b, int N, std::int64_t prec);

/// Ghat^(2)_p = Ehat^(2)_{p,0}(N tau): integer q-powers, rational coefficients.
QSeries expand_Ghat2(long long p, int N, std::int64_t prec);

/// H^(2)_{p,q} = G^(2)_q - delta_{q0} Ghat^(2)_p; integer q-powers.
QSeries expand_H(long long p, long long q, int N, std::int64_t prec);

/// q d/dq log g_{a,b} from the Siegel-unit product formula; exact for
/// exponent numerators < prec. Rejects (a,b) == (0,0) mod N.
QSeries siegel_log_deriv(long long a, long long b, int N, std::int64_t prec);

/// Optional on-disk layer for the expansion cache. One JSON document per
/// (N, EisensteinID, prec) under a content-addressed filename; re-reads are
/// bit-identical. An empty path disables the layer.
void set_series_cache_dir(const std::string& dir);
std::string series_cache_dir();
/// Drops the in-memory cache (mainly for tests).
void clear_series_cache();

}  // namespace eisenlift
