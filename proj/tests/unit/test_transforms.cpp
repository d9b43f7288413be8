#include <doctest.h>

#include "cliffcauchy/cif.hpp"
#include "cliffcauchy/structures.hpp"

using namespace cliffcauchy;

namespace {

BoundaryFunction constant_one(const SurfaceDomain& dom) {
  return {dom, [m = dom.m](const RealVec&) { return Multivector::scalar(m, 1.0); }};
}

FieldPtr top_fixture(int m) {
  return fixture_holomorphic_top(PolynomialField::coordinate_z(m, 1, false));
}

}  // namespace

TEST_CASE("cauchy transform reproduces and vanishes across the boundary") {
  SurfaceDomain dom = unit_sphere(4);
  RealVec pole{2.0, 0.0, 0.0, 0.0};
  FieldPtr f = fixture_shifted_kernel(pole);
  BoundaryFunction h = boundary_restriction(dom, f);

  RealVec Xin{-0.4, 0.1, 0.0, 0.0};
  Multivector gin = cauchy_transform(h, Framework::Euclidean, Xin, 24).g;
  CHECK((gin - f->eval(Xin)).norm_inf() <= 1e-6);

  RealVec Xout{-2.0, 0.0, 0.5, 0.0};
  Multivector gout = cauchy_transform(h, Framework::Euclidean, Xout, 24).g;
  CHECK(gout.norm_inf() <= 1e-6);

  CHECK_THROWS_AS(cauchy_transform(h, Framework::Euclidean, {0.999, 0.0, 0.0, 0.0}, 8),
                  std::invalid_argument);
}

TEST_CASE("hermitian transform splits into g1 and a vanishing g2 for top data") {
  SurfaceDomain dom = unit_sphere(4);
  FieldPtr f = top_fixture(4);
  BoundaryFunction hn = boundary_restriction(dom, f);
  RealVec X{0.25, -0.15, 0.1, 0.0};
  CauchyTransformResult r = cauchy_transform(hn, Framework::Hermitian, X, 24);
  // g1 recovers (-2i)^n f interiorly; g2 vanishes (the first condition)
  const Complex c = herm_cif_constant(2);
  CHECK((r.g * c - f->eval(X)).norm_inf() <= 1e-6);
  CHECK(r.g2->norm_inf() <= 1e-8);
}

TEST_CASE("transform decay along a ray") {
  // interior-pole data: the exterior transform is -E(X - pole), which decays
  // like 1/t^{m-1} along the ray
  SurfaceDomain dom = unit_sphere(4);
  auto inner = kernel_field(KernelId::E_X, RealVec(4, 0.0));
  BoundaryFunction h{dom, [inner](const RealVec& Y) { return inner->eval(Y); }};
  VerificationReport rep = cauchy_decay_check(h, {-1.0, 0.0, 0.0, 0.0}, 12);
  CHECK(rep.pass);

  // and the exterior value matches the closed form
  RealVec X{-4.0, 0.0, 0.0, 0.0};
  Multivector g = cauchy_transform(h, Framework::Euclidean, X, 16).g;
  Multivector expect = eval_kernel(KernelId::E_X, X).value * (-1.0);
  CHECK((g - expect).norm_inf() <= 1e-8);
}

TEST_CASE("integral conditions on boundary data") {
  SurfaceDomain dom = unit_sphere(4);
  auto interior = interior_probe_lattice(dom);
  auto exterior = exterior_probe_lattice(dom);

  BoundaryFunction one = constant_one(dom);
  CHECK(check_condition(one, ConditionKind::FirstCondition, interior, 24) <= 1e-8);

  FieldPtr f = top_fixture(4);
  BoundaryFunction hn = boundary_restriction(dom, f);
  CHECK(check_condition(hn, ConditionKind::FirstCondition, interior, 24) <= 1e-8);
  CHECK(check_condition(hn, ConditionKind::HardyCondition, exterior, 24) <= 1e-8);
  CHECK(check_condition(hn, ConditionKind::KCondition, interior, 24) <= 1e-6);

  // negative control: antiholomorphic top data has a visibly nonzero integral
  const StructureSet& S = StructureSet::get(4);
  auto bad = std::make_shared<PolynomialField>(
      PolynomialField::coordinate_z(4, 1, true).left_mul(S.parts[2].basis.front()));
  BoundaryFunction hbad = boundary_restriction(dom, bad);
  CHECK(check_condition(hbad, ConditionKind::KCondition, {interior[1]}, 24) > 1e-4 * 100.0);

  // osp Euler-kernel conditions for h = V fdag1 I data
  FieldPtr hpp = fixture_osp_candidate(PolynomialField::coordinate_z(4, 1, false),
                                       S.cells[2].basis.front());
  BoundaryFunction hb = boundary_restriction(dom, hpp);
  CHECK(check_condition(hb, ConditionKind::OspEConditions, interior, 24) <= 1e-7);
}

TEST_CASE("hilbert transform of the constant") {
  SurfaceDomain dom = unit_sphere(4);
  RealVec Xi{1.0, 0.0, 0.0, 0.0};
  BoundaryFunction one = constant_one(dom);
  PvResult hv = hilbert_transform(one, Xi, default_pv_schedule(1.0), 48, true);
  Multivector unit = Multivector::scalar(4, 1.0);
  CHECK((hv.value - unit).norm_inf() <= 1e-2);
  CHECK((*hv.reduced - unit).norm_inf() <= 1e-2);
  CHECK(hv.table.size() == 4);

  CHECK_THROWS_AS(hilbert_transform(one, Xi, {0.4, 0.2}, 16), std::invalid_argument);
}

TEST_CASE("hilbert transform fixes the Hardy boundary values") {
  SurfaceDomain dom = unit_sphere(4);
  RealVec Xi{1.0, 0.0, 0.0, 0.0};
  FieldPtr f = top_fixture(4);
  BoundaryFunction hn = boundary_restriction(dom, f);
  PvResult hv = hilbert_transform(hn, Xi, default_pv_schedule(1.0), 48, true);
  CHECK((hv.value - hn.eval(Xi)).norm_inf() <= 2e-2);
  CHECK((hv.value - *hv.reduced).norm_inf() <= 2e-2);
}

TEST_CASE("plemelj jump formulas") {
  SurfaceDomain dom = unit_sphere(4);
  RealVec Xi{1.0, 0.0, 0.0, 0.0};

  BoundaryFunction one = constant_one(dom);
  VerificationReport r1 = plemelj_check(one, Xi, default_limit_schedule(), 48);
  CHECK(r1.residual("interior_limit") <= 1e-2);
  CHECK(r1.residual("exterior_limit") <= 1e-2);
  CHECK(r1.residual("jump_difference") <= 1e-2);

  FieldPtr f = top_fixture(4);
  BoundaryFunction hn = boundary_restriction(dom, f);
  VerificationReport r2 = plemelj_check(hn, Xi, default_limit_schedule(), 48);
  CHECK(r2.residual("interior_limit") <= 2e-2);
  CHECK(r2.residual("exterior_limit") <= 2e-2);
  CHECK(r2.residual("jump_difference") <= 2e-2);
}

TEST_CASE("boundary lemma with principal values") {
  SurfaceDomain dom = unit_sphere(4);
  RealVec Xi{1.0, 0.0, 0.0, 0.0};
  VerificationReport rep = lemma_integrals_boundary(dom, Xi, 48);
  CHECK(rep.residual("item_i_half") <= 1e-2);
  CHECK(rep.residual("item_ii_zero") <= 1e-2);
  CHECK(rep.residual("item_iii_zero") <= 1e-2);
  CHECK(rep.residual("pv_euclidean_half") <= 1e-2);
  CHECK(rep.pass);
}

TEST_CASE("negative control: interior-pole data breaks H[h] = h") {
  SurfaceDomain dom = unit_sphere(4);
  RealVec Xi{1.0, 0.0, 0.0, 0.0};
  auto inner = kernel_field(KernelId::E_X, RealVec(4, 0.0));
  BoundaryFunction h{dom, [inner](const RealVec& Y) { return inner->eval(Y) * 100.0; }};
  PvResult hv = hilbert_transform(h, Xi, default_pv_schedule(1.0), 48);
  CHECK((hv.value - h.eval(Xi)).norm_inf() > 100.0 * 2e-2);
}
