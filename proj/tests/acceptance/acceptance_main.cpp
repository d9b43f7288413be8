// Acceptance suite: the thirteen exit criteria of the toolkit, each run at its
// stated tolerance on the desk-scale domain (m = 4, n = 2, p = 1) and printed
// as one pass/fail line.  Exit code is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "cliffcauchy/cif.hpp"
#include "cliffcauchy/scenario.hpp"
#include "cliffcauchy/structures.hpp"

using namespace cliffcauchy;

namespace {

struct Line {
  int id;
  std::string title;
  double worst = 0.0;
  double tol = 0.0;
  bool pass = false;
  double secs = 0.0;
};

std::vector<Line> lines;

template <typename Fn>
void criterion(int id, const std::string& title, Fn&& fn) {
  Line line{id, title};
  auto t0 = std::chrono::steady_clock::now();
  try {
    auto [worst, tol] = fn();
    line.worst = worst;
    line.tol = tol;
    line.pass = worst <= tol;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "criterion %d threw: %s\n", id, e.what());
    line.pass = false;
    line.worst = 1e300;
    line.tol = 0.0;
  }
  line.secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  lines.push_back(std::move(line));
}

Scenario desk_scenario() {
  Scenario sc;
  sc.name = "acceptance";
  sc.m = 4;
  sc.dom = unit_sphere(4);
  sc.orders = {24};
  sc.seed = 20240101ULL;
  return sc;
}

double worst_of(const std::vector<VerificationReport>& reports,
                const std::vector<std::string>& names) {
  double worst = 0.0;
  for (const auto& rep : reports)
    for (const auto& [name, r] : rep.residuals)
      for (const auto& want : names)
        if (name.find(want) != std::string::npos) worst = std::max(worst, r);
  return worst;
}

using CheckResult = std::pair<double, double>;  // (worst residual, tolerance)

}  // namespace

int main() {
  const Scenario sc = desk_scenario();
  const SurfaceDomain dom = sc.dom;

  criterion(1, "algebra exactness (Witt, structure matrices, idempotent)", [&] {
    auto reports = check_registry().at("algebra_exactness")(sc);
    double worst = 0.0;
    for (const auto& rep : reports) worst = std::max(worst, rep.max_residual());
    return CheckResult{worst, 1e-12};
  });

  criterion(2, "dual-backend measure agreement, nine kinds, 200 nodes", [&] {
    auto reports = check_registry().at("dual_backend_measures")(sc);
    double worst = 0.0;
    for (const auto& rep : reports)
      for (const auto& [name, r] : rep.residuals)
        if (name.rfind("backend_", 0) == 0 || name == "reconstruction_dsigma_X")
          worst = std::max(worst, r);
    return CheckResult{worst, 1e-10};
  });

  criterion(3, "operator factorizations on 20 random degree-3 fields", [&] {
    auto trials = random_polynomial_fields(4, 20, 3, sc.seed);
    auto probes = interior_probe_lattice(dom);
    double worst = 0.0;
    for (IdentityTag tag :
         {IdentityTag::LaplaceFromDiracSquare, IdentityTag::HermCirculantFactorization,
          IdentityTag::QuatFullFactorization, IdentityTag::QuatBlockFactorization})
      worst = std::max(worst, check_operator_identity(tag, trials, probes));
    return CheckResult{worst, 1e-10};
  });

  criterion(4, "kernel PDE suite (off-origin cancellations, K, Euler kernels)", [&] {
    double worst = kernel_pde_check(4, 50, sc.seed).max_residual();
    for (MatrixVariant v :
         {MatrixVariant::Herm2x2, MatrixVariant::Quat4x4, MatrixVariant::QuatBlock})
      worst = std::max(worst, matrix_fundamental_check(v, 4, 50, sc.seed).max_residual());
    return CheckResult{worst, 1e-7};
  });

  criterion(5, "normalizations: interior lemma (1,0,0), boundary lemma (1/2,0,0)", [&] {
    RealVec X = dom.center;
    X[0] += 0.35;
    VerificationReport interior = lemma_integrals_interior(dom, X, 24);
    RealVec Xi = dom.center;
    Xi[0] += dom.radius;
    VerificationReport boundary = lemma_integrals_boundary(dom, Xi, 48);
    // separate tiers: 1e-8 interior, 1e-2 boundary; report the binding margin
    double scaled = interior.max_residual() / 1e-8;
    scaled = std::max(scaled, boundary.max_residual() / 1e-2);
    return CheckResult{scaled, 1.0};
  });

  criterion(6, "euclidean CIF: reproduction, exterior zero, order convergence", [&] {
    auto reports = check_registry().at("cif_euclidean")(
        [&] {
          Scenario s = sc;
          s.orders = {8, 16, 24, 32};
          return s;
        }());
    double worst = worst_of(reports, {"reproduction_kernel_fixture", "exterior_vanishing"});
    double convergence = worst_of(reports, {"convergence_monotone"});
    return CheckResult{std::max(worst, convergence > 0.0 ? 1.0 : 0.0), 1e-6};
  });

  criterion(7, "hermitian suite: CCH, CCHnv, strong identities, matrix consistency", [&] {
    auto reports = check_registry().at("cif_hermitian")(sc);
    double scaled = worst_of(reports, {"cch_reproduction", "matrix_entry"}) / 1e-6;
    scaled = std::max(scaled, worst_of(reports, {"cchnv_identity", "strong_"}) / 1e-8);
    scaled = std::max(scaled, worst_of(reports, {"diag_entry"}) / 1e-10);
    return CheckResult{scaled, 1.0};
  });

  criterion(8, "Martinelli-Bochner: MB == F(z) == CIF coefficient, swap identities", [&] {
    auto reports = check_registry().at("martinelli_bochner")(sc);
    double scaled =
        worst_of(reports, {"mb_reproduces_F", "mb_vs_cif_coefficient"}) / 1e-6;
    scaled = std::max(scaled, worst_of(reports, {"swap_identities"}) / 1e-8);
    return CheckResult{scaled, 1.0};
  });

  criterion(9, "Hilbert and Plemelj: H[1] = 1, H[h^n] = h^n, boundary limits", [&] {
    RealVec Xi = dom.center;
    Xi[0] += dom.radius;
    const int q = 48;
    BoundaryFunction one{dom, [&](const RealVec&) { return Multivector::scalar(4, 1.0); }};
    PvResult h1 = hilbert_transform(one, Xi, default_pv_schedule(dom.radius), q);
    double scaled = (h1.value - Multivector::scalar(4, 1.0)).norm_inf() / 1e-2;

    FieldPtr f = fixture_holomorphic_top(PolynomialField::coordinate_z(4, 1, false));
    BoundaryFunction hn = boundary_restriction(dom, f);
    PvResult hv = hilbert_transform(hn, Xi, default_pv_schedule(dom.radius), q);
    scaled = std::max(scaled, (hv.value - hn.eval(Xi)).norm_inf() / 2e-2);

    VerificationReport p1 = plemelj_check(one, Xi, default_limit_schedule(), q);
    VerificationReport p2 = plemelj_check(hn, Xi, default_limit_schedule(), q);
    scaled = std::max(scaled, p1.max_residual() / 2e-2);
    scaled = std::max(scaled, p2.max_residual() / 2e-2);
    return CheckResult{scaled, 1.0};
  });

  criterion(10, "quaternionic suite: both routes, identities, strong forms", [&] {
    auto reports = check_registry().at("cif_quaternionic")(sc);
    double scaled =
        worst_of(reports, {"reproduction_z_route", "reproduction_J_route", "matrix_entry"}) /
        1e-6;
    scaled = std::max(scaled, worst_of(reports, {"identity_", "strong_"}) / 1e-8);
    scaled = std::max(scaled, worst_of(reports, {"constant_consistency"}) / 1e-300);
    return CheckResult{scaled, 1.0};
  });

  criterion(11, "osp(4|2) suite: representation formulas and identities", [&] {
    auto reports = check_registry().at("cif_osp")(sc);
    double scaled = worst_of(reports, {"osprep1", "osprep2"}) / 1e-6;
    scaled = std::max(scaled, worst_of(reports, {"ospid"}) / 1e-7);
    scaled = std::max(scaled, worst_of(reports, {"precheck_six_operators"}) / 1e-8);
    return CheckResult{scaled, 1.0};
  });

  criterion(12, "negative controls exceed 100x tolerance on designated bad inputs", [&] {
    auto reports = check_registry().at("negative_controls")(sc);
    return CheckResult{worst_of(reports, {"_margin"}), 0.0};
  });

  criterion(13, "determinism: repeated verify runs are byte-identical", [&] {
    Scenario sub = sc;
    sub.checks = {"algebra_exactness", "lemma_interior", "dual_backend_measures"};
    sub.orders = {16};
    SuiteResult a = run_verify(sub, 2);
    SuiteResult b = run_verify(sub, 1);
    bool same = a.to_json(false).dump() == b.to_json(false).dump();
    return CheckResult{same ? 0.0 : 1.0, 0.0};
  });

  int failures = 0;
  double total = 0.0;
  for (const auto& line : lines) {
    total += line.secs;
    if (!line.pass) ++failures;
    std::printf("[%s] criterion %2d: %-68s  worst %.3e  tol %.1e  (%.1fs)\n",
                line.pass ? "PASS" : "FAIL", line.id, line.title.c_str(), line.worst,
                line.tol, line.secs);
  }
  std::printf("%d/13 criteria passed, total %.1fs\n", 13 - failures,
              static_cast<int>(lines.size()) == 13 ? total : total);
  return failures;
}
