#include <doctest.h>

#include "cliffcauchy/cif.hpp"

using namespace cliffcauchy;

TEST_CASE("euclidean CIF reproduces a shifted kernel") {
  SurfaceDomain dom = unit_sphere(4);
  RealVec pole{2.0, 0.0, 0.0, 0.0};
  FieldPtr f = fixture_shifted_kernel(pole);

  VerificationReport interior =
      cif_euclidean(*f, dom, {0.1, -0.2, 0.3, 0.0}, 24);
  CHECK(interior.pass);
  CHECK(interior.residual("reproduction") <= 1e-6);

  VerificationReport exterior = cif_euclidean(*f, dom, {-2.0, 0.5, 0.0, 0.0}, 24);
  CHECK(exterior.pass);
  CHECK(exterior.residual("exterior_zero") <= 1e-8);
}

TEST_CASE("euclidean CIF reproduces constants to the tight tier") {
  SurfaceDomain dom = unit_sphere(4);
  PolynomialField one = PolynomialField::constant(4, Multivector::scalar(4, 1.0));
  VerificationReport rep = cif_euclidean(one, dom, {0.3, 0.0, 0.0, 0.0}, 24);
  CHECK(rep.residual("reproduction") <= 1e-8);
}

TEST_CASE("residual decreases with quadrature order") {
  SurfaceDomain dom = unit_sphere(4);
  RealVec pole{2.0, 0.0, 0.0, 0.0};
  FieldPtr f = fixture_shifted_kernel(pole);
  double prev = 1e9;
  for (int q : {8, 16, 24, 32}) {
    double r = cif_euclidean(*f, dom, {0.25, 0.1, 0.0, -0.1}, q).residual("reproduction");
    CHECK(r < prev + 1e-12);
    prev = r;
  }
  CHECK(prev <= 1e-6);
}

TEST_CASE("monogenicity pre-check rejects the vector field") {
  SurfaceDomain dom = unit_sphere(4);
  PolynomialField vf(4);
  for (int a = 1; a <= 4; ++a)
    vf += PolynomialField::coordinate(4, a).left_mul(Multivector::basis_vector(4, a));
  CHECK_THROWS_AS(cif_euclidean(vf, dom, {0.2, 0.0, 0.0, 0.0}, 8), std::invalid_argument);
  // with the pre-check bypassed, the residual is large (negative control)
  double r = cif_euclidean(vf, dom, {0.2, 0.0, 0.0, 0.0}, 16, false).residual("reproduction");
  CHECK(r > 100.0 * 1e-6);
}

TEST_CASE("points too close to the boundary are rejected") {
  SurfaceDomain dom = unit_sphere(4);
  FieldPtr f = fixture_shifted_kernel({2.0, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(cif_euclidean(*f, dom, {0.9, 0.0, 0.0, 0.0}, 8), std::invalid_argument);
  CHECK_THROWS_AS(cif_euclidean(*f, dom, {-1.1, 0.0, 0.0, 0.0}, 8), std::invalid_argument);
}

TEST_CASE("shifted domain still reproduces") {
  SurfaceDomain dom{4, {0.5, -0.3, 0.2, 0.1}, 0.8};
  RealVec pole = vec_add(dom.center, RealVec{1.6, 0.0, 0.0, 0.0});
  FieldPtr f = fixture_shifted_kernel(pole);
  VerificationReport rep = cif_euclidean(*f, dom, dom.center, 24);
  CHECK(rep.residual("reproduction") <= 1e-6);
}
