#pragma once

// Spherical boundary domains with product quadrature (Gauss-Legendre in the
// polar angles, trapezoid in the azimuth), and the surface measures evaluated
// by two independent backends: normal projection and differential-form
// pullback on the node's tangent frame.

#include <functional>
#include <iosfwd>
#include <vector>

#include "cliffcauchy/multivector.hpp"

namespace cliffcauchy {

struct SurfaceDomain {
  int m = 0;
  RealVec center;
  double radius = 1.0;
};

SurfaceDomain unit_sphere(int m);

struct QuadratureNode {
  RealVec point;                  // on the sphere
  RealVec normal;                 // unit outward
  std::vector<RealVec> tangents;  // dY/du_i, frame ordered so det[normal; t...] > 0
  double weight = 0.0;            // includes the metric jacobian (area weight)
  double param_weight = 0.0;      // bare product of 1-d rule weights
  double metric = 0.0;            // |cross(tangents)| in closed form
};

enum class MeasureKind {
  dS, dSigma_X, dSigma_XI, dSigma_XJ, dSigma_XK,
  dSigma_z, dSigma_zdag, dSigma_zJ, dSigma_zdagJ,
};

const char* measure_name(MeasureKind k);
bool measure_admissible(MeasureKind k, int m);
std::vector<MeasureKind> admissible_measures(int m);

/// Gauss-Legendre rule on (-1, 1).
void gauss_legendre(int q, std::vector<double>& nodes, std::vector<double>& weights);

class SphereQuadrature {
public:
  SphereQuadrature(SurfaceDomain dom, int q);  // q >= 4

  [[nodiscard]] const SurfaceDomain& domain() const { return dom_; }
  [[nodiscard]] int order() const { return q_; }
  [[nodiscard]] std::size_t node_count() const { return count_; }
  [[nodiscard]] QuadratureNode node(std::size_t i) const;

  /// Node at arbitrary angles (theta_1..theta_{m-2}, phi); weight fields are zero.
  [[nodiscard]] QuadratureNode node_at(const std::vector<double>& angles) const;

  /// Factorized sum of all weights, O(q m) without enumerating nodes.
  [[nodiscard]] double weight_sum() const;

  /// Deterministic pairwise-tree reduction of term(node) * node.weight is NOT
  /// applied here; term sees the full node and applies the weight itself.
  [[nodiscard]] Multivector integrate(
      const std::function<Multivector(const QuadratureNode&)>& term, int jobs = 1) const;
  [[nodiscard]] Complex integrate_scalar(
      const std::function<Complex(const QuadratureNode&)>& term, int jobs = 1) const;

  void dump_csv(std::ostream& os) const;

private:
  SurfaceDomain dom_;
  int q_;
  std::size_t count_;
  std::vector<double> polar_nodes_, polar_weights_;  // theta in (0, pi)
  std::vector<double> azimuth_nodes_;                // 2q equispaced, offset half step
  double azimuth_weight_;
  void angles_of(std::size_t i, std::vector<double>& angles, double& pweight) const;
  QuadratureNode build_node(const std::vector<double>& angles, double pweight) const;
};

/// Test hook carrying the hermitian form constant 2^{n-1} (-i)^n; the exponent
/// delta exists so the selftest can corrupt the power of two on purpose.
struct MeasureFormConstants {
  int two_exponent_delta = 0;
  [[nodiscard]] Complex herm_constant(int n) const;
};

/// Backend A: normal projection.  Density per unit area weight.
Multivector eval_measure(MeasureKind kind, const QuadratureNode& node,
                         const MeasureFormConstants& conv = {});

/// Backend B: differential-form pullback via determinants on the tangent frame.
Multivector eval_measure_pullback(MeasureKind kind, const QuadratureNode& node);

/// Martinelli-Bochner form [d xi_j] pulled back on the frame, per unit area.
Complex mb_form_pullback(int j, const QuadratureNode& node);

/// Interleaved-wedge forms hat(dz_j) / hat(dz_j^c) pulled back, per unit area.
Complex hermitian_form_pullback(int j, bool conjugate_slot, const QuadratureNode& node);

/// sum_nodes A(Y) dsigma B(Y) w with the noncommutative ordering preserved.
/// Null callables act as the constant 1.
using PointFn = std::function<Multivector(const RealVec&)>;
Multivector boundary_integral(const SphereQuadrature& quad, const PointFn& A, MeasureKind kind,
                              const PointFn& B, int jobs = 1);

/// Fused sum of several kernel/measure pairs against one right factor:
/// sum_nodes ( sum_i A_i(Y) dsigma_i ) B(Y) w.
Multivector boundary_integral_sum(const SphereQuadrature& quad,
                                  const std::vector<std::pair<PointFn, MeasureKind>>& pairs,
                                  const PointFn& B, int jobs = 1);

/// Same with a node filter (principal value cap exclusion).
Multivector boundary_integral_sum_filtered(
    const SphereQuadrature& quad, const std::vector<std::pair<PointFn, MeasureKind>>& pairs,
    const PointFn& B, const std::function<bool(const QuadratureNode&)>& keep, int jobs = 1);

/// Closed-form area of the unit sphere S^{m-1}.
double sphere_area_closed_form(int m);

}  // namespace cliffcauchy
