#pragma once

// Complex and hypercomplex structures on R^m, the Witt frame built from them,
// the spinor space realization by a primitive idempotent, its homogeneous
// parts, and the symplectic cells cut out by the multiplication operators
// P and Q.  Vectors are rows; a structure matrix acts by right multiplication.

#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "cliffcauchy/multivector.hpp"

namespace cliffcauchy {

struct StructureMatrix {
  char kind;  // 'I', 'J' or 'K'
  int m;
  Eigen::MatrixXd mat;

  [[nodiscard]] RealVec apply(const RealVec& v) const;
  /// Complex-linear action on a grade-1 multivector.
  [[nodiscard]] Multivector apply(const Multivector& v) const;
};

StructureMatrix structure_I(int m);  // m even
StructureMatrix structure_J(int m);  // m divisible by 4
StructureMatrix structure_K(int m);  // K = I*J, m divisible by 4

struct WittFrame {
  int n;                            // half-dimension; algebra dimension is 2n
  std::vector<Multivector> f;       // f[k-1]    = pi^-[e_{2k-1}] = -1/2 (e_{2k-1} - i e_{2k})
  std::vector<Multivector> fdag;    // fdag[k-1] = pi^+[e_{2k-1}] = +1/2 (e_{2k-1} + i e_{2k})
  Multivector idem;                 // primitive idempotent I = I_1 ... I_n, I_j = f_j fdag_j
  Multivector beta;                 // beta = sum_k fdag_k f_k
  WittFrame() : n(0), idem(1), beta(1) {}
};

WittFrame build_witt_frame(int n);

struct SpinorPart {
  int r;                            // homogeneity degree, dim = C(n, r)
  std::vector<Multivector> basis;   // fdag_{i1}...fdag_{ir} I, ascending index sets
};

struct SymplecticCell {
  int r, s;                         // cell S^r_s (r = homogeneity degree, s = bottom label)
  std::vector<Multivector> basis;
};

std::vector<SpinorPart> spinor_parts(int n);
std::vector<SymplecticCell> cell_decomposition(int p);

/// Everything structural for one admissible dimension, built once and cached.
struct StructureSet {
  int m = 0;      // algebra dimension, even
  int n = 0;      // m / 2
  int p = 0;      // m / 4 when m is a fourfold, else 0
  StructureMatrix I, J, K;              // J, K populated only when p > 0
  WittFrame witt;
  std::vector<SpinorPart> parts;
  std::vector<SymplecticCell> cells;    // empty when p == 0
  Multivector P{1}, Q{1};               // multiplication operators, valid when p > 0

  static const StructureSet& get(int m);

  [[nodiscard]] nlohmann::ordered_json dump() const;
};

/// Hermitian split of a real vector: z = pi^-[X] = sum z_k f_k,
/// zdag = pi^+[X] = sum z_k^c fdag_k, with X = zdag - z.
std::pair<Multivector, Multivector> hermitian_split(const RealVec& X);

struct QuaternionicSplit {
  Multivector z, zdag, zJ, zdagJ;
};

/// Adds the J-rotated pair; computed both by matrix action and by the
/// Witt-coordinate formula, which must agree to 1e-12.
QuaternionicSplit quaternionic_split(const RealVec& X);

/// Complex coordinates z_k = X_{2k-1} + i X_{2k}.
std::vector<Complex> complex_coords(const RealVec& X);

Multivector apply_P(const Multivector& v);
Multivector apply_Q(const Multivector& v);

struct PartProjection {
  Multivector projection;
  std::vector<Complex> coords;   // coefficients on the part basis
  double residual;               // |v - projection| restricted to nothing: coefficient l2 of the remainder
};

/// Least-squares projection of v onto span(basis) in the blade-coefficient
/// inner product.  residual is the l2 norm of v - projection.
PartProjection project_to_part(const Multivector& v, const std::vector<Multivector>& basis);

/// Component of a spinor-space value in S^r (zero multivector if r out of range).
Multivector spinor_component(const Multivector& v, int r);

/// l2 distance from v to the span of the S^r basis.
double spinor_membership_residual(const Multivector& v, int r);

}  // namespace cliffcauchy
