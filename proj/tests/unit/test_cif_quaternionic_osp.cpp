#include <doctest.h>

#include "cliffcauchy/cif.hpp"
#include "cliffcauchy/structures.hpp"

using namespace cliffcauchy;

namespace {

PolynomialField z1(int e = 1) {
  PolynomialField out = PolynomialField::constant(4, Multivector::scalar(4, 1.0));
  for (int i = 0; i < e; ++i)
    out = out.scalar_poly_mul(PolynomialField::coordinate_z(4, 1, false));
  return out;
}

}  // namespace

TEST_CASE("quaternionic CIF on the constant S^1_1 fixture") {
  SurfaceDomain dom = unit_sphere(4);
  FieldPtr c = fixture_constant_in_part(4, 1, 1);
  VerificationReport rep = cif_quaternionic_scalar(*c, dom, {0.3, 0.0, 0.1, 0.0}, 24);
  CHECK(rep.residual("reproduction_z_route") <= 1e-8);
  CHECK(rep.residual("reproduction_J_route") <= 1e-8);
  CHECK(rep.residual("identity_z_route") <= 1e-8);
  CHECK(rep.residual("identity_J_route") <= 1e-8);
  CHECK(rep.residual("strong_E_dsigma_vdag") <= 1e-8);
  CHECK(rep.residual("strong_Edag_dsigma_v") <= 1e-8);
  CHECK(rep.residual("strong_EJ_dsigma_vdagJ") <= 1e-8);
  CHECK(rep.residual("strong_EdagJ_dsigma_vJ") <= 1e-8);
  CHECK(rep.residual("constant_consistency") == 0.0);
  CHECK(rep.pass);
}

TEST_CASE("quaternionic CIF on oracle-verified polynomial fixtures") {
  SurfaceDomain dom = unit_sphere(4);
  RealVec X{0.25, -0.1, 0.15, 0.05};

  FieldPtr simple = fixture_holomorphic_s1_pair(4, z1(2), PolynomialField(4));
  VerificationReport rep = cif_quaternionic_scalar(*simple, dom, X, 24);
  CHECK(rep.residual("reproduction_z_route") <= 1e-6);
  CHECK(rep.residual("reproduction_J_route") <= 1e-6);
  CHECK(rep.pass);

  // mixed pair A = z1 z2, B = z1^2/2 satisfies dA/dz2 = dB/dz1
  PolynomialField A = z1(1).scalar_poly_mul(PolynomialField::coordinate_z(4, 2, false));
  PolynomialField B = z1(2) * Complex(0.5, 0.0);
  FieldPtr mixed = fixture_holomorphic_s1_pair(4, A, B);
  VerificationReport mrep = cif_quaternionic_scalar(*mixed, dom, X, 24);
  CHECK(mrep.residual("reproduction_z_route") <= 1e-6);
  CHECK(mrep.residual("identity_J_route") <= 1e-8);
  CHECK(mrep.pass);
}

TEST_CASE("quaternionic matrix CIF on the block quad") {
  SurfaceDomain dom = unit_sphere(4);
  QuatBlockQuad quad = fixture_quaternionic_quad(4);
  VerificationReport rep = cif_quaternionic_matrix(quad, dom, {0.2, 0.1, -0.15, 0.0}, 24);
  for (const char* entry :
       {"matrix_entry_g1", "matrix_entry_g2", "matrix_entry_g3", "matrix_entry_g4"})
    CHECK(rep.residual(entry) <= 1e-6);
  CHECK(rep.pass);
}

TEST_CASE("constant S^2_0 value is quaternionic monogenic too") {
  SurfaceDomain dom = unit_sphere(4);
  FieldPtr c = fixture_constant_in_part(4, 2, 0);
  VerificationReport rep = cif_quaternionic_scalar(*c, dom, {0.0, 0.2, 0.0, 0.3}, 24);
  CHECK(rep.residual("reproduction_z_route") <= 1e-8);
  CHECK(rep.pass);
}

TEST_CASE("negative control: S^1 data violating the holomorphic coupling") {
  SurfaceDomain dom = unit_sphere(4);
  const StructureSet& S = StructureSet::get(4);
  // z2 fdag1 I fails Dz (the coupling dA/dz2 = dB/dz1 is broken)
  PolynomialField bad =
      PolynomialField::coordinate_z(4, 2, false).left_mul(S.parts[1].basis.front());
  CHECK_THROWS_AS(cif_quaternionic_scalar(bad, dom, {0.2, 0.0, 0.0, 0.0}, 8),
                  std::invalid_argument);
  VerificationReport rep = cif_quaternionic_scalar(bad, dom, {0.2, 0.0, 0.0, 0.0}, 16, false);
  CHECK(std::max(rep.residual("reproduction_z_route"), rep.residual("identity_z_route")) >
        100.0 * 1e-6);
}

TEST_CASE("osp(4|2) CIF on the fixture set") {
  SurfaceDomain dom = unit_sphere(4);
  RealVec X{0.25, 0.0, 0.0, 0.2};

  FieldPtr c = fixture_constant_in_part(4, 1, 1);
  VerificationReport rep = cif_osp(*c, dom, X, 24);
  CHECK(rep.residual("osprep1") <= 1e-8);
  CHECK(rep.residual("osprep2") <= 1e-8);
  CHECK(rep.residual("ospid1") <= 1e-8);
  CHECK(rep.residual("ospid2") <= 1e-8);
  CHECK(rep.residual("ospid3") <= 1e-7);
  CHECK(rep.residual("ospid4") <= 1e-7);
  CHECK(rep.residual("precheck_six_operators") <= 1e-8);
  CHECK(rep.pass);

  const StructureSet& S = StructureSet::get(4);
  FieldPtr vf = fixture_osp_candidate(z1(1), S.cells[2].basis.front());
  VerificationReport vrep = cif_osp(*vf, dom, X, 24);
  CHECK(vrep.residual("osprep1") <= 1e-6);
  CHECK(vrep.residual("osprep2") <= 1e-6);
  CHECK(vrep.residual("ospid3") <= 1e-7);
  CHECK(vrep.residual("ospid4") <= 1e-7);
  CHECK(vrep.pass);
}

TEST_CASE("osp candidate oracle accepts and rejects correctly") {
  const StructureSet& S = StructureSet::get(4);
  const Multivector cell = S.cells[2].basis.front();  // S^1_1

  // V = z1 z1c + z2 z2c is killed by EulerE yet fails the full membership
  auto zz = [&](int k) {
    return PolynomialField::coordinate_z(4, k, false).scalar_poly_mul(
        PolynomialField::coordinate_z(4, k, true));
  };
  PolynomialField V = zz(1) + zz(2);
  MonogenicityReport rep = osp_candidate_report(V, cell);
  double euler = 1.0;
  for (const auto& [name, r] : rep.residuals)
    if (name == std::string("EulerE")) euler = r;
  CHECK(euler <= 1e-14);
  CHECK(rep.max_residual() > 0.05);
  CHECK_THROWS_AS(fixture_osp_candidate(V, cell), std::invalid_argument);

  // V holomorphic in z1 alone is accepted
  CHECK_NOTHROW(fixture_osp_candidate(z1(2), cell));
}

TEST_CASE("negative control for the osp identities") {
  SurfaceDomain dom = unit_sphere(4);
  const StructureSet& S = StructureSet::get(4);
  PolynomialField bad =
      PolynomialField::coordinate_z(4, 1, true).left_mul(S.parts[1].basis.front());
  VerificationReport rep = cif_osp(bad, dom, {0.25, 0.0, 0.0, 0.1}, 16, false);
  CHECK(std::max(rep.residual("osprep1"), rep.residual("precheck_six_operators")) >
        100.0 * 1e-6);
}
