#pragma once

#include <array>
#include <optional>
#include <vector>

#include "eisenlift/eisenstein.hpp"
#include "eisenlift/modsym.hpp"

namespace eisenlift {

/// Orientation of closed modular caps relative to the boundary of a polygon
/// traversed along its sides. Fixed once by the N = 5 reference triangle and
/// asserted everywhere (boundary_zero).
inline constexpr int kCapOrientation = +1;

/// Lift of the closed modular cap at gamma_r(inf): with gamma_r = (m, i; n, j)
/// this is H^(2)_{j,-n}. Integer q-powers; prec counts q-powers.
QSeries lift_cap(const MatZ& gamma_r, int N, std::int64_t prec);

/// Lift of the unimodular symbol gamma {0, inf}: -G^(1)_d G^(1)_c.
QSeries lift_unimodular(const MatZ& g, int N, std::int64_t prec);

/// Lift of the cycle of gamma in Gamma_1(N), assembled from decompose_cycle:
/// sum of cap coefficients times cap lifts plus the unimodular symbol lifts.
/// Rational coefficients; zero series for the identity.
QSeries lift_cycle(const MatZ& g, int N, std::int64_t prec);

/// Vertex parameter pair (m_i, n_i) of a polygon through the cusps -m_i/n_i.
/// Signs carry the side orientations, so no normalization is applied here.
struct VertexPair {
  Int m, n;
  std::string str() const { return m.str() + "/" + n.str(); }
};

enum class RelationStatus { Verified, Failed, Rejected };

struct Mismatch {
  std::int64_t e;        // exponent numerator of the first mismatch
  std::string lhs, rhs;  // coefficient strings
};

/// Outcome of one relation check; status Verified means lhs - rhs vanishes
/// up to the stated precision.
struct RelationReport {
  int level = 0;
  std::string kind;   // "triangle" | "polygon" | "boundary-zero"
  std::string data;   // indices or cusp list
  std::int64_t prec = 0;
  RelationStatus status = RelationStatus::Rejected;
  std::optional<Mismatch> mismatch;
  std::string reason;                     // for rejected reports
  int coeffs_compared = 0;                // nonzero coefficients compared when verified
  std::optional<bool> pairwise_coprime;   // triangles: n_i also pairwise coprime

  bool verified() const { return status == RelationStatus::Verified; }
  int exit_code() const {
    return status == RelationStatus::Verified ? 0 : (status == RelationStatus::Failed ? 1 : 2);
  }
  std::string to_json() const;
};

struct TriangleData {
  Int m1, m2, m3;
  Int n1, n2, n3;                // shifted residues with n1 + n2 + n3 = 0
  std::array<MatZ, 3> sides;     // gamma_12, gamma_23, gamma_31
  std::array<MatZ, 3> caps;      // cap matrices at r2, r3, r1
};

/// Unimodular triangle through the cusps -m_i/n_i realizing the residues
/// (n1, n2, n3); each n_i coprime to N, n1 + n2 + n3 = 0 mod N.
TriangleData build_triangle(int N, const Int& n1, const Int& n2, const Int& n3);

/// Checks G^(1)_{n1} G^(1)_{n2} + G^(1)_{n2} G^(1)_{n3} + G^(1)_{n3} G^(1)_{n1}
///      = G^(2)_{n1} + G^(2)_{n2} + G^(2)_{n3} exactly up to q^prec.
RelationReport verify_triangle(int N, long long n1, long long n2, long long n3,
                               std::int64_t prec);

/// Polygon version over vertices [m_i : n_i] with unimodular consecutive
/// sides m_i n_{i+1} - m_{i+1} n_i = 1 (cyclically) and each n_i coprime to N.
RelationReport verify_polygon(int N, const std::vector<VertexPair>& vertices, std::int64_t prec);

/// Evaluates sum of side lifts plus kCapOrientation times the cap lifts of the
/// polygon and checks that the total vanishes.
RelationReport boundary_zero(int N, const std::vector<VertexPair>& vertices, std::int64_t prec);

}  // namespace eisenlift
