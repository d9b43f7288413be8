#include <sstream>

#include "cliffcauchy/cif.hpp"
#include "cliffcauchy/structures.hpp"

namespace cliffcauchy {

namespace {

std::vector<RealVec> oracle_probes(int m) {
  return interior_probe_lattice(unit_sphere(m));
}

void require_membership(const CliffordField& f, Framework fw, const char* what) {
  MonogenicityReport rep = classify_monogenicity(f, fw, oracle_probes(f.dim()));
  if (rep.max_residual() <= 1e-8) return;
  std::ostringstream os;
  os << what << ": candidate fails its advertised " << framework_name(fw)
     << " membership; residuals:";
  for (const auto& [name, r] : rep.residuals) os << " " << name << "=" << r;
  throw std::invalid_argument(os.str());
}

}  // namespace

FieldPtr fixture_constant_in_part(int m, int r, int s) {
  const StructureSet& S = StructureSet::get(m);
  require(S.p > 0, "cell fixtures require fourfold dimension");
  for (const auto& cell : S.cells) {
    if (cell.r == r && cell.s == s) {
      auto field = std::make_shared<PolynomialField>(
          PolynomialField::constant(m, cell.basis.front()));
      return field;
    }
  }
  throw std::invalid_argument("no symplectic cell with the requested labels");
}

FieldPtr fixture_shifted_kernel(const RealVec& pole) {
  return kernel_field(KernelId::E_X, pole);
}

FieldPtr fixture_holomorphic_top(const PolynomialField& F) {
  const int m = F.dim();
  const StructureSet& S = StructureSet::get(m);
  Multivector top = S.parts[S.n].basis.front();  // fdag_1 ... fdag_n I
  auto field = std::make_shared<PolynomialField>(F.left_mul(top));
  require_membership(*field, Framework::Hermitian, "fixture_holomorphic_top");
  return field;
}

FieldPtr fixture_osp_candidate(const PolynomialField& V, const Multivector& cell_vector) {
  auto field = std::make_shared<PolynomialField>(V.left_mul(cell_vector));
  require_membership(*field, Framework::Osp42, "fixture_osp_candidate");
  return field;
}

MonogenicityReport osp_candidate_report(const PolynomialField& V,
                                        const Multivector& cell_vector) {
  PolynomialField field = V.left_mul(cell_vector);
  return classify_monogenicity(field, Framework::Osp42, oracle_probes(V.dim()));
}

PolynomialField fixture_random_polynomial(int m, int degree, std::uint64_t seed) {
  return random_polynomial_fields(m, 1, degree, seed).front();
}

CirculantPair fixture_hermitian_pair(int m) {
  require(m == 4, "the nondiagonal hermitian pair fixture is built at m = 4");
  const StructureSet& S = StructureSet::get(m);
  Multivector top = S.parts[2].basis.front();  // fdag1 fdag2 I
  auto g1 = std::make_shared<PolynomialField>(
      PolynomialField::coordinate_z(m, 1, false).left_mul(S.witt.idem));
  auto g2 = std::make_shared<PolynomialField>(
      PolynomialField::coordinate_z(m, 2, true).left_mul(top));

  // circulant system residual must vanish exactly on the oracle probes
  auto probes = oracle_probes(m);
  double worst = 0.0;
  PolynomialField r1 = apply_operator_exact(OperatorKind::Dz, *g1) +
                       apply_operator_exact(OperatorKind::DzDag, *g2);
  PolynomialField r2 = apply_operator_exact(OperatorKind::DzDag, *g1) +
                       apply_operator_exact(OperatorKind::Dz, *g2);
  for (const auto& X : probes)
    worst = std::max({worst, r1.eval(X).norm_inf(), r2.eval(X).norm_inf()});
  require(worst <= 1e-12, "hermitian pair fixture fails its defining system");
  return {g1, g2};
}

QuatBlockQuad fixture_quaternionic_quad(int m) {
  require(m == 4, "the nondiagonal quaternionic quad fixture is built at m = 4");
  const StructureSet& S = StructureSet::get(m);
  Multivector top = S.parts[2].basis.front();
  CirculantPair upper = fixture_hermitian_pair(m);
  auto g3 = std::make_shared<PolynomialField>(
      PolynomialField::coordinate_z(m, 1, true).left_mul(S.witt.idem));
  auto g4 = std::make_shared<PolynomialField>(
      PolynomialField::coordinate_z(m, 2, false).left_mul(top));

  auto probes = oracle_probes(m);
  double worst = 0.0;
  PolynomialField r3 = apply_operator_exact(OperatorKind::DzJ, *g3) +
                       apply_operator_exact(OperatorKind::DzDagJ, *g4);
  PolynomialField r4 = apply_operator_exact(OperatorKind::DzDagJ, *g3) +
                       apply_operator_exact(OperatorKind::DzJ, *g4);
  for (const auto& X : probes)
    worst = std::max({worst, r3.eval(X).norm_inf(), r4.eval(X).norm_inf()});
  require(worst <= 1e-12, "quaternionic quad fixture fails its defining system");
  return {upper.g1, upper.g2, g3, g4};
}

FieldPtr fixture_holomorphic_s1_pair(int m, const PolynomialField& A,
                                     const PolynomialField& B) {
  require(m % 4 == 0, "S^1 pair fixture requires fourfold dimension");
  const StructureSet& S = StructureSet::get(m);
  PolynomialField f = A.left_mul(S.parts[1].basis[0]) + B.left_mul(S.parts[1].basis[1]);
  auto field = std::make_shared<PolynomialField>(std::move(f));
  require_membership(*field, Framework::Quaternionic, "fixture_holomorphic_s1_pair");
  return field;
}

PolynomialField scalar_poly_from_json(int m, const nlohmann::json& monomials) {
  PolynomialField out(m);
  const int n = m / 2;
  for (const auto& mono : monomials) {
    PolynomialField term =
        PolynomialField::constant(m, Multivector::scalar(m, Complex(1.0, 0.0)));
    auto z_exps = mono.value("z", std::vector<int>(n, 0));
    auto zc_exps = mono.value("zc", std::vector<int>(n, 0));
    require(static_cast<int>(z_exps.size()) == n && static_cast<int>(zc_exps.size()) == n,
            "scalar polynomial exponent count mismatch");
    for (int k = 1; k <= n; ++k) {
      for (int e = 0; e < z_exps[k - 1]; ++e)
        term = term.scalar_poly_mul(PolynomialField::coordinate_z(m, k, false));
      for (int e = 0; e < zc_exps[k - 1]; ++e)
        term = term.scalar_poly_mul(PolynomialField::coordinate_z(m, k, true));
    }
    Complex c(mono.value("re", 1.0), mono.value("im", 0.0));
    out += term * c;
  }
  return out;
}

FieldPtr test_function(const nlohmann::json& spec) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "constant-in-part") {
    return fixture_constant_in_part(spec.at("m").get<int>(), spec.at("r").get<int>(),
                                    spec.at("s").get<int>());
  }
  if (kind == "shifted-euclidean-kernel") {
    return fixture_shifted_kernel(spec.at("pole").get<RealVec>());
  }
  if (kind == "holomorphic-top") {
    int m = spec.at("m").get<int>();
    return fixture_holomorphic_top(scalar_poly_from_json(m, spec.at("F")));
  }
  if (kind == "osp-candidate") {
    int m = spec.at("m").get<int>();
    PolynomialField V = scalar_poly_from_json(m, spec.at("V"));
    const StructureSet& S = StructureSet::get(m);
    int r = spec.at("r").get<int>();
    int s = spec.at("s").get<int>();
    for (const auto& cell : S.cells)
      if (cell.r == r && cell.s == s) return fixture_osp_candidate(V, cell.basis.front());
    throw std::invalid_argument("osp-candidate: no cell with the requested labels");
  }
  if (kind == "random-polynomial") {
    return std::make_shared<PolynomialField>(fixture_random_polynomial(
        spec.at("m").get<int>(), spec.value("degree", 3), spec.value("seed", 1234ULL)));
  }
  if (kind == "holomorphic-s1-pair") {
    int m = spec.at("m").get<int>();
    return fixture_holomorphic_s1_pair(m, scalar_poly_from_json(m, spec.at("A")),
                                       scalar_poly_from_json(m, spec.at("B")));
  }
  throw std::invalid_argument("unknown fixture kind: " + kind);
}

}  // namespace cliffcauchy
