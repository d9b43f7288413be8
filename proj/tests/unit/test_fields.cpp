#include <doctest.h>

#include "cliffcauchy/fields.hpp"
#include "cliffcauchy/kernels.hpp"
#include "cliffcauchy/structures.hpp"

using namespace cliffcauchy;

namespace {

PolynomialField vector_field(int m) {
  PolynomialField f(m);
  for (int a = 1; a <= m; ++a)
    f += PolynomialField::coordinate(m, a).left_mul(Multivector::basis_vector(m, a));
  return f;
}

std::vector<RealVec> probes4() {
  return {{0.3, -0.2, 0.5, 0.1}, {1.0, 0.0, 0.0, 0.0}, {-0.4, 0.7, -0.1, 0.9}};
}

}  // namespace

TEST_CASE("dirac of the vector field is -m") {
  for (int m : {2, 4, 6}) {
    PolynomialField f = vector_field(m);
    PolynomialField d = apply_operator_exact(OperatorKind::Dirac, f);
    RealVec X(m, 0.25);
    CHECK((d.eval(X) + Multivector::scalar(m, static_cast<double>(m))).norm_inf() == 0.0);
  }
}

TEST_CASE("euler operator kills z1 z1c + z2 z2c") {
  const int m = 4;
  auto zz = [&](int k) {
    return PolynomialField::coordinate_z(m, k, false).scalar_poly_mul(
        PolynomialField::coordinate_z(m, k, true));
  };
  PolynomialField V = zz(1) + zz(2);
  PolynomialField e = apply_operator_exact(OperatorKind::EulerE, V);
  for (const auto& X : probes4()) CHECK(e.eval(X).norm_inf() <= 1e-14);
}

TEST_CASE("dz annihilates holomorphic top-part values") {
  const int m = 4;
  const StructureSet& S = StructureSet::get(m);
  Multivector top = S.parts[2].basis.front();
  PolynomialField g = PolynomialField::coordinate_z(m, 1, false).left_mul(top);
  PolynomialField d = apply_operator_exact(OperatorKind::Dz, g);
  for (const auto& X : probes4()) CHECK(d.eval(X).norm_inf() <= 1e-14);
}

TEST_CASE("operator identities on random polynomials") {
  auto trials = random_polynomial_fields(4, 20, 3, 20240101ULL);
  auto probes = probes4();
  CHECK(check_operator_identity(IdentityTag::DiracFromHermitian, trials, probes) <= 1e-10);
  CHECK(check_operator_identity(IdentityTag::LaplaceFromDiracSquare, trials, probes) <= 1e-10);
  CHECK(check_operator_identity(IdentityTag::HermCirculantFactorization, trials, probes) <=
        1e-10);
  CHECK(check_operator_identity(IdentityTag::QuatFullFactorization, trials, probes) <= 1e-10);
  CHECK(check_operator_identity(IdentityTag::QuatBlockFactorization, trials, probes) <= 1e-10);
}

TEST_CASE("value routing of the hermitian operators") {
  const int m = 4;
  const StructureSet& S = StructureSet::get(m);
  PolynomialField mix = PolynomialField::coordinate_z(m, 1, false) +
                        PolynomialField::coordinate_z(m, 2, true) * Complex(0.7, 0.1);
  for (int r = 0; r <= 2; ++r) {
    PolynomialField f = mix.left_mul(S.parts[r].basis.front());
    PolynomialField up = apply_operator_exact(OperatorKind::Dz, f);
    PolynomialField down = apply_operator_exact(OperatorKind::DzDag, f);
    for (const auto& X : probes4()) {
      Multivector u = up.eval(X);
      Multivector d = down.eval(X);
      if (!u.is_zero(1e-14)) CHECK(spinor_membership_residual(u, r + 1) <= 1e-10);
      if (!d.is_zero(1e-14)) CHECK(spinor_membership_residual(d, r - 1) <= 1e-10);
    }
  }
}

TEST_CASE("classification across frameworks") {
  const int m = 4;
  const StructureSet& S = StructureSet::get(m);

  // constant spinor value in S^1_1: all six osp operators vanish
  PolynomialField c = PolynomialField::constant(m, S.parts[1].basis.front());
  MonogenicityReport osp = classify_monogenicity(c, Framework::Osp42, probes4());
  CHECK(osp.exact_path);
  CHECK(osp.max_residual() == 0.0);

  // V(z1) fdag1 I is osp(4|2) monogenic
  PolynomialField vf =
      PolynomialField::coordinate_z(m, 1, false).left_mul(S.parts[1].basis.front());
  CHECK(classify_monogenicity(vf, Framework::Osp42, probes4()).max_residual() <= 1e-14);

  // z1 zc1 + z2 zc2 times fdag1 I kills EulerE but fails DzDag
  auto zz = [&](int k) {
    return PolynomialField::coordinate_z(m, k, false).scalar_poly_mul(
        PolynomialField::coordinate_z(m, k, true));
  };
  PolynomialField bad = (zz(1) + zz(2)).left_mul(S.parts[1].basis.front());
  MonogenicityReport r = classify_monogenicity(bad, Framework::Osp42, probes4());
  double euler = 0.0, dzdag = 0.0;
  for (const auto& [name, value] : r.residuals) {
    if (name == std::string("EulerE")) euler = value;
    if (name == std::string("DzDag")) dzdag = value;
  }
  CHECK(euler <= 1e-14);
  CHECK(dzdag > 0.1);

  // the euclidean kernel is monogenic away from its pole (FD path)
  RealVec pole(m, 0.0);
  pole[0] = 3.0;
  FieldPtr k = kernel_field(KernelId::E_X, pole);
  MonogenicityReport ek = classify_monogenicity(*k, Framework::Euclidean, probes4());
  CHECK_FALSE(ek.exact_path);
  CHECK(ek.max_residual() <= 1e-6);
}

TEST_CASE("fd matches exact derivatives on polynomial data") {
  const int m = 4;
  PolynomialField f = random_polynomial_fields(m, 1, 3, 99).front();
  LambdaField wrapped(m, [&](const RealVec& X) { return f.eval(X); });
  RealVec X{0.4, -0.3, 0.9, 0.2};
  for (OperatorKind op : {OperatorKind::Dirac, OperatorKind::Dz, OperatorKind::DzDagJ,
                          OperatorKind::EulerE, OperatorKind::Laplacian}) {
    Multivector exact = apply_operator_exact(op, f).eval(X);
    Multivector fd = apply_operator(op, wrapped, X, FDConfig{1e-5, true});
    CHECK((exact - fd).norm_inf() <= 1e-6);
  }
}

TEST_CASE("fd convergence report") {
  RealVec pole(4, 0.0);
  FieldPtr f = kernel_field(KernelId::E_X, pole);
  RealVec X{1.7, 0.0, 0.0, 0.4};
  FDConvergenceReport rep = fd_convergence_report(*f, X, OperatorKind::Dirac);
  CHECK_FALSE(rep.exact_path);
  CHECK(rep.observed_order_central == doctest::Approx(2.0).epsilon(0.15));
  CHECK(rep.observed_order_richardson >= 3.0);

  PolynomialField poly = random_polynomial_fields(4, 1, 2, 7).front();
  FDConvergenceReport prep = fd_convergence_report(poly, X, OperatorKind::Dirac);
  CHECK(prep.exact_path);
  for (const auto& row : prep.rows) {
    CHECK(row.central == 0.0);
    CHECK(row.richardson == 0.0);
  }
}

TEST_CASE("singularity guard") {
  RealVec pole(4, 0.0);
  FieldPtr f = kernel_field(KernelId::E_X, pole);
  RealVec too_close{5e-5, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(apply_operator(OperatorKind::Dirac, *f, too_close, FDConfig{1e-5, true}),
                  std::invalid_argument);
}

TEST_CASE("polynomial json round trip") {
  PolynomialField f = random_polynomial_fields(4, 1, 3, 4242).front();
  PolynomialField g = PolynomialField::from_json(f.to_json());
  RealVec X{0.3, 0.1, -0.2, 0.8};
  CHECK((f.eval(X) - g.eval(X)).norm_inf() == 0.0);
}

TEST_CASE("inadmissible operators are rejected") {
  PolynomialField f = random_polynomial_fields(2, 1, 2, 1).front();
  CHECK_THROWS_AS(apply_operator_exact(OperatorKind::DzJ, f), std::invalid_argument);
  CHECK_THROWS_AS(apply_operator_exact(OperatorKind::EulerE, f), std::invalid_argument);
}
