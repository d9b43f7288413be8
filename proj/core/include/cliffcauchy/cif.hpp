#pragma once

// Cauchy Integral Formula verifications across the euclidean, hermitian,
// quaternionic and osp(4|2) settings: reproducing formulas, integral
// identities, Cauchy and Hilbert transforms with boundary limits, the
// Martinelli-Bochner cross-check, and the oracle-verified fixture factory.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliffcauchy/boundary.hpp"
#include "cliffcauchy/fields.hpp"
#include "cliffcauchy/kernels.hpp"
#include "cliffcauchy/multivector.hpp"

namespace cliffcauchy {

// Tolerance tiers, published in every report.
namespace tolerances {
constexpr double algebra = 1e-12;
constexpr double backend = 1e-10;
constexpr double routing = 1e-10;
constexpr double factorization = 1e-10;
constexpr double kernel_fd = 1e-7;
constexpr double reproducing = 1e-8;     // smooth reproducing integrals, strong identities
constexpr double cif_kernel = 1e-6;      // kernel-vs-kernel reproduction with FD data
constexpr double pv = 1e-2;              // principal value extrapolations
constexpr double boundary_limit = 2e-2;  // Plemelj-type boundary limits
}  // namespace tolerances

struct VerificationReport {
  std::string check;
  std::string framework;
  std::vector<std::pair<std::string, double>> residuals;
  int q = 0;
  std::map<std::string, double> tols;  // residual name -> tolerance
  bool pass = false;
  double runtime_ms = 0.0;

  double residual(const std::string& name) const;
  double max_residual() const;
  void finish();  // computes pass from residuals vs tols
  [[nodiscard]] nlohmann::ordered_json to_json(bool include_runtime = true) const;
};

struct CirculantPair {
  FieldPtr g1, g2;
};

struct QuatBlockQuad {
  FieldPtr g1, g2, g3, g4;
};

struct BoundaryFunction {
  SurfaceDomain dom;
  std::function<Multivector(const RealVec&)> eval;
};

BoundaryFunction boundary_restriction(const SurfaceDomain& dom, FieldPtr field);

/// Deterministic probe lattices: center plus scaled axes and diagonals.
std::vector<RealVec> interior_probe_lattice(const SurfaceDomain& dom);  // 13 points
std::vector<RealVec> exterior_probe_lattice(const SurfaceDomain& dom);  // 13 points

/// 1/(-2i)^n and 1/(-4)^p, by exact repeated multiplication.
Complex herm_cif_constant(int n);
Complex quat_cif_constant(int p);

// --- reproducing formulas and identities -----------------------------------

VerificationReport cif_euclidean(const CliffordField& f, const SurfaceDomain& dom,
                                 const RealVec& X, int q, bool precheck = true, int jobs = 1);

VerificationReport cif_hermitian_scalar(const CliffordField& g, const SurfaceDomain& dom,
                                        const RealVec& X, int q, bool precheck = true,
                                        int jobs = 1);

VerificationReport cif_hermitian_matrix(const CirculantPair& G, const SurfaceDomain& dom,
                                        const RealVec& X, int q, bool precheck = true,
                                        int jobs = 1);

VerificationReport cif_quaternionic_scalar(const CliffordField& g, const SurfaceDomain& dom,
                                           const RealVec& X, int q, bool precheck = true,
                                           int jobs = 1);

VerificationReport cif_quaternionic_matrix(const QuatBlockQuad& G, const SurfaceDomain& dom,
                                           const RealVec& X, int q, bool precheck = true,
                                           int jobs = 1);

VerificationReport cif_osp(const CliffordField& g, const SurfaceDomain& dom, const RealVec& X,
                           int q, bool precheck = true, int jobs = 1);

// --- Cauchy transform and conditions ----------------------------------------

struct CauchyTransformResult {
  Multivector g;                      // euclidean transform (or g1)
  std::optional<Multivector> g2, g3, g4;
};

CauchyTransformResult cauchy_transform(const BoundaryFunction& h, Framework fw,
                                       const RealVec& X, int q, int jobs = 1);

/// |g(t X0)| for t in {4, 8, 16} along a ray, against the kernel-homogeneity
/// decay C / t^{m-1}.
VerificationReport cauchy_decay_check(const BoundaryFunction& h, const RealVec& direction,
                                      int q);

enum class ConditionKind { FirstCondition, HardyCondition, KCondition, OspEConditions };
const char* condition_name(ConditionKind c);

/// Max magnitude of the named integral over the probes.
double check_condition(const BoundaryFunction& h, ConditionKind which,
                       const std::vector<RealVec>& probes, int q, int jobs = 1);

// --- principal values and boundary limits -----------------------------------

struct PvResult {
  Multivector value;                                    // extrapolated to eps -> 0
  std::vector<std::pair<double, Multivector>> table;    // per-eps cap-excluded values
  std::optional<Multivector> reduced;                   // hermitian reduced form
};

/// Hilbert transform 2 Pv int E dsigma h with geodesic-cap exclusion and
/// linear-in-eps extrapolation.  When with_reduced is set the hermitian
/// reduced expression is extrapolated alongside.
PvResult hilbert_transform(const BoundaryFunction& h, const RealVec& Xi,
                           std::vector<double> eps_schedule, int q, bool with_reduced = false,
                           int jobs = 1);

std::vector<double> default_pv_schedule(double radius);   // {0.4, 0.2, 0.1, 0.05} R
std::vector<double> default_limit_schedule();             // {0.1, 0.05, 0.025}

/// Plemelj-Sokhotzki: interior/exterior normal-ray limits of the Cauchy
/// transform against +-(1/2) h + (1/2) H[h].
VerificationReport plemelj_check(const BoundaryFunction& h, const RealVec& Xi,
                                 std::vector<double> t_schedule, int q, int jobs = 1);

/// Interior Lemma (1, 0, 0) at an interior point.
VerificationReport lemma_integrals_interior(const SurfaceDomain& dom, const RealVec& X, int q,
                                            int jobs = 1);

/// Boundary Lemma (1/2, 0, 0) with Pv extrapolation, plus Pv int E dsigma = 1/2.
VerificationReport lemma_integrals_boundary(const SurfaceDomain& dom, const RealVec& Xi, int q,
                                            int jobs = 1);

// --- Martinelli-Bochner ------------------------------------------------------

/// F is a scalar-valued polynomial in the complex coordinates (holomorphy is
/// pre-checked).  Verifies MB value == F(z) == hermitian CIF coefficient and
/// the pairwise swap identities.
VerificationReport martinelli_bochner(const PolynomialField& F, const SurfaceDomain& dom,
                                      const std::vector<Complex>& z, int q, int jobs = 1);

// --- fixture factory ---------------------------------------------------------

/// Constant field with value the first basis vector of cell S^r_s.
FieldPtr fixture_constant_in_part(int m, int r, int s);

/// Y -> E_X(Y - pole); euclidean monogenic away from the pole.
FieldPtr fixture_shifted_kernel(const RealVec& pole);

/// F fdag_1 ... fdag_n I for scalar F; verified hermitian monogenic (throws
/// with the residual vector otherwise).
FieldPtr fixture_holomorphic_top(const PolynomialField& F);

/// V times a Ker P cell vector; osp(4|2) membership decided by the exact
/// oracle, never assumed (throws when the candidate fails).
FieldPtr fixture_osp_candidate(const PolynomialField& V, const Multivector& cell_vector);

/// Membership report for an osp candidate without throwing.
MonogenicityReport osp_candidate_report(const PolynomialField& V,
                                        const Multivector& cell_vector);

/// Seeded random polynomial (not monogenic; negative controls, factorizations).
PolynomialField fixture_random_polynomial(int m, int degree, std::uint64_t seed);

/// Nondiagonal hermitian monogenic circulant pair (m = 4):
/// g1 = z1 I in S^0, g2 = z2^c fdag1 fdag2 I in S^2.
CirculantPair fixture_hermitian_pair(int m);

/// Nondiagonal quaternionic monogenic block quad (m = 4).
QuatBlockQuad fixture_quaternionic_quad(int m);

/// Quaternionic monogenic S^1-valued polynomial field A fdag1 I + B fdag2 I
/// with holomorphic A, B and dA/dz2 == dB/dz1 (oracle-verified).
FieldPtr fixture_holomorphic_s1_pair(int m, const PolynomialField& A, const PolynomialField& B);

/// JSON-driven dispatcher for scenario files.
FieldPtr test_function(const nlohmann::json& spec);

/// Scalar polynomial in z/zc coordinates from a json monomial list:
/// [{"z": [e1..en], "zc": [c1..cn], "re": .., "im": ..}, ...]
PolynomialField scalar_poly_from_json(int m, const nlohmann::json& monomials);

}  // namespace cliffcauchy
