#include <doctest.h>

#include <numbers>
#include <random>

#include "cliffcauchy/cif.hpp"
#include "cliffcauchy/structures.hpp"

using namespace cliffcauchy;

// Spot checks away from the m = 4 desk scale: the plane (m = 2), where all of
// this collapses to classical complex analysis, and one higher dimension (m = 8).

TEST_CASE("m=2: euclidean CIF is the classical Cauchy formula") {
  SurfaceDomain dom = unit_sphere(2);
  FieldPtr f = fixture_shifted_kernel({2.0, 0.0});
  VerificationReport rep = cif_euclidean(*f, dom, {0.3, 0.2}, 16);
  // trapezoid on the circle is spectrally accurate
  CHECK(rep.residual("reproduction") <= 1e-10);

  VerificationReport ext = cif_euclidean(*f, dom, {-2.0, 0.4}, 16);
  CHECK(ext.residual("exterior_zero") <= 1e-10);
}

TEST_CASE("m=2: hermitian CIF against the holomorphic evaluation") {
  SurfaceDomain dom = unit_sphere(2);
  // f = F(z1) fdag1 I with F = z1^2; CIF must return F at the target point
  PolynomialField F = PolynomialField::coordinate_z(2, 1, false)
                          .scalar_poly_mul(PolynomialField::coordinate_z(2, 1, false));
  FieldPtr g = fixture_holomorphic_top(F);
  RealVec X{0.3, -0.2};
  VerificationReport rep = cif_hermitian_scalar(*g, dom, X, 16);
  CHECK(rep.residual("cch_reproduction") <= 1e-10);
  CHECK(rep.residual("cchnv_identity") <= 1e-10);
  CHECK(rep.pass);
}

TEST_CASE("m=2: martinelli-bochner is the Cauchy integral") {
  SurfaceDomain dom = unit_sphere(2);
  PolynomialField F = PolynomialField::coordinate_z(2, 1, false);
  VerificationReport rep = martinelli_bochner(F, dom, {Complex(0.25, 0.1)}, 16);
  CHECK(rep.residual("mb_reproduces_F") <= 1e-10);
  CHECK(rep.residual("mb_vs_cif_coefficient") <= 1e-10);
  CHECK(rep.pass);
}

TEST_CASE("m=2: interior lemma normalization") {
  SurfaceDomain dom = unit_sphere(2);
  VerificationReport rep = lemma_integrals_interior(dom, {0.2, 0.1}, 16);
  CHECK(rep.pass);
}

TEST_CASE("m=8: area and dual backend measures") {
  CHECK(std::abs(SphereQuadrature(unit_sphere(8), 24).weight_sum() -
                 std::pow(std::numbers::pi, 4) / 3.0) <= 1e-10);

  SphereQuadrature quad(unit_sphere(8), 4);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> theta(0.2, std::numbers::pi - 0.2);
  std::uniform_real_distribution<double> phi(0.0, 2.0 * std::numbers::pi);
  double worst = 0.0;
  for (int t = 0; t < 25; ++t) {
    std::vector<double> angles(7);
    for (int a = 0; a < 6; ++a) angles[a] = theta(rng);
    angles[6] = phi(rng);
    QuadratureNode node = quad.node_at(angles);
    for (MeasureKind kind : admissible_measures(8))
      worst = std::max(worst,
                       (eval_measure(kind, node) - eval_measure_pullback(kind, node)).norm_inf());
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("m=8: reproducing normalization converges at modest orders" * doctest::timeout(600)) {
  SurfaceDomain dom = unit_sphere(8);
  RealVec X(8, 0.0);
  X[0] = 0.25;
  double prev = 1e9;
  for (int q : {6, 8}) {
    SphereQuadrature quad(dom, q);
    Multivector integral = boundary_integral(
        quad,
        [&](const RealVec& Y) { return eval_kernel(KernelId::E_X, vec_sub(Y, X)).value; },
        MeasureKind::dSigma_X, nullptr, 8);
    double r = (integral - Multivector::scalar(8, 1.0)).norm_inf();
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev <= 1e-3);
}

TEST_CASE("m=8: kernel PDE spot checks") {
  PdeCheckReport rep = kernel_pde_check(8, 10, 99ULL);
  for (const auto& [name, r] : rep.residuals) {
    INFO(name);
    CHECK(r <= 1e-7);
  }
}
