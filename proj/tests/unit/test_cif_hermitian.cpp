#include <doctest.h>

#include "cliffcauchy/cif.hpp"
#include "cliffcauchy/structures.hpp"

using namespace cliffcauchy;

namespace {

PolynomialField zpow(int m, int k, int e) {
  PolynomialField out = PolynomialField::constant(m, Multivector::scalar(m, 1.0));
  for (int i = 0; i < e; ++i)
    out = out.scalar_poly_mul(PolynomialField::coordinate_z(m, k, false));
  return out;
}

}  // namespace

TEST_CASE("interior lemma integrals (1, 0, 0)") {
  SurfaceDomain dom = unit_sphere(4);
  for (RealVec X : {RealVec{0.0, 0.0, 0.0, 0.0}, RealVec{0.35, 0.0, 0.0, 0.0},
                    RealVec{-0.2, 0.3, 0.1, -0.25}}) {
    VerificationReport rep = lemma_integrals_interior(dom, X, 24);
    INFO("X0 = " << X[0]);
    CHECK(rep.residual("item_i_one") <= 1e-8);
    CHECK(rep.residual("item_ii_zero") <= 1e-8);
    CHECK(rep.residual("item_iii_zero") <= 1e-8);
    CHECK(rep.residual("euclidean_one") <= 1e-8);
    CHECK(rep.pass);
  }
}

TEST_CASE("scalar hermitian CIF on the Example-1 fixtures") {
  SurfaceDomain dom = unit_sphere(4);
  RealVec X{0.3, 0.15, 0.0, 0.1};
  for (auto& [label, F] :
       std::vector<std::pair<std::string, PolynomialField>>{
           {"1", PolynomialField::constant(4, Multivector::scalar(4, 1.0))},
           {"z1", zpow(4, 1, 1)},
           {"z1z2", zpow(4, 1, 1).scalar_poly_mul(zpow(4, 2, 1))},
           {"z1^2", zpow(4, 1, 2)}}) {
    INFO("F = " << label);
    FieldPtr g = fixture_holomorphic_top(F);
    VerificationReport rep = cif_hermitian_scalar(*g, dom, X, 24);
    CHECK(rep.residual("cch_reproduction") <= 1e-6);
    CHECK(rep.residual("cchnv_identity") <= 1e-8);
    CHECK(rep.residual("strong_E_dsigma_vdag") <= 1e-8);
    CHECK(rep.residual("strong_Edag_dsigma_v") <= 1e-8);
    CHECK(rep.residual("value_routing") <= 1e-10);
    CHECK(rep.pass);
  }
}

TEST_CASE("hermitian monogenic implies euclidean reproduction") {
  SurfaceDomain dom = unit_sphere(4);
  RealVec X{0.25, -0.1, 0.2, 0.0};
  FieldPtr g = fixture_holomorphic_top(zpow(4, 1, 1).scalar_poly_mul(zpow(4, 2, 1)));
  VerificationReport rep = cif_euclidean(*g, dom, X, 24);
  CHECK(rep.residual("reproduction") <= 1e-6);
}

TEST_CASE("strong identities for a pure homogeneous component") {
  // r = 1 values: fdag1 I carries S^1; both strong integrals vanish
  SurfaceDomain dom = unit_sphere(4);
  const StructureSet& S = StructureSet::get(4);
  PolynomialField g = zpow(4, 1, 1).left_mul(S.parts[1].basis.front());
  // not hermitian monogenic in general; the strong identities are a routing
  // fact for monogenic data, so use the verified quaternionic S^1 fixture
  FieldPtr f = fixture_holomorphic_s1_pair(4, zpow(4, 1, 1), PolynomialField(4));
  VerificationReport rep = cif_hermitian_scalar(*f, dom, {0.2, 0.0, -0.15, 0.1}, 24);
  CHECK(rep.residual("strong_E_dsigma_vdag") <= 1e-8);
  CHECK(rep.residual("strong_Edag_dsigma_v") <= 1e-8);
}

TEST_CASE("matrix CIF: diagonal embedding matches the scalar route") {
  SurfaceDomain dom = unit_sphere(4);
  RealVec X{0.3, 0.15, 0.0, 0.1};
  FieldPtr g = fixture_holomorphic_top(zpow(4, 1, 1));
  auto zero = std::make_shared<PolynomialField>(4);
  VerificationReport scalar = cif_hermitian_scalar(*g, dom, X, 24, false);
  VerificationReport matrix = cif_hermitian_matrix({g, zero}, dom, X, 24, false);
  CHECK(matrix.residual("matrix_entry_g1") ==
        doctest::Approx(scalar.residual("cch_reproduction")).epsilon(1e-10));
  const double cmag = std::abs(herm_cif_constant(2));
  CHECK(matrix.residual("matrix_entry_g2") ==
        doctest::Approx(cmag * scalar.residual("cchnv_identity")).epsilon(1e-10));
}

TEST_CASE("matrix CIF on a genuinely nondiagonal circulant pair") {
  SurfaceDomain dom = unit_sphere(4);
  CirculantPair pair = fixture_hermitian_pair(4);
  VerificationReport rep = cif_hermitian_matrix(pair, dom, {0.2, -0.1, 0.3, 0.05}, 24);
  CHECK(rep.residual("matrix_entry_g1") <= 1e-6);
  CHECK(rep.residual("matrix_entry_g2") <= 1e-6);
  CHECK(rep.pass);

  // neither entry alone is hermitian monogenic
  MonogenicityReport r1 = classify_monogenicity(
      *pair.g1, Framework::Hermitian, interior_probe_lattice(dom));
  MonogenicityReport r2 = classify_monogenicity(
      *pair.g2, Framework::Hermitian, interior_probe_lattice(dom));
  CHECK(r1.max_residual() > 0.1);
  CHECK(r2.max_residual() > 0.1);
}

TEST_CASE("negative control: antiholomorphic top data fails loudly") {
  SurfaceDomain dom = unit_sphere(4);
  const StructureSet& S = StructureSet::get(4);
  PolynomialField bad =
      PolynomialField::coordinate_z(4, 1, true).left_mul(S.parts[2].basis.front());
  CHECK_THROWS_AS(fixture_holomorphic_top(PolynomialField::coordinate_z(4, 1, true)),
                  std::invalid_argument);
  VerificationReport rep = cif_hermitian_scalar(bad, dom, {0.3, 0.0, 0.0, 0.0}, 16, false);
  CHECK(rep.residual("cch_reproduction") > 100.0 * 1e-6);
}

TEST_CASE("martinelli-bochner cross-check") {
  SurfaceDomain dom = unit_sphere(4);
  std::vector<Complex> z = {Complex(0.2, 0.0), Complex(0.0, 0.1)};
  for (auto& [label, F] :
       std::vector<std::pair<std::string, PolynomialField>>{
           {"1", PolynomialField::constant(4, Multivector::scalar(4, 1.0))},
           {"z1", zpow(4, 1, 1)},
           {"z1z2", zpow(4, 1, 1).scalar_poly_mul(zpow(4, 2, 1))},
           {"z1^2", zpow(4, 1, 2)}}) {
    INFO("F = " << label);
    VerificationReport rep = martinelli_bochner(F, dom, z, 24);
    CHECK(rep.residual("mb_reproduces_F") <= 1e-6);
    CHECK(rep.residual("mb_vs_cif_coefficient") <= 1e-8);
    CHECK(rep.residual("swap_identities") <= 1e-8);
    CHECK(rep.pass);
  }
  // non-holomorphic data is rejected up front
  CHECK_THROWS_AS(
      martinelli_bochner(PolynomialField::coordinate_z(4, 1, true), dom, z, 8),
      std::invalid_argument);
}
