#pragma once

// Closed-form Cauchy kernels of the euclidean, hermitian and quaternionic
// settings, the hermitian monogenic kernel K, the Euler-acted kernels, and
// the Martinelli-Bochner density factor, together with the pointwise PDE
// checks that tie them to the differential operators.

#include <string>
#include <vector>

#include "cliffcauchy/fields.hpp"
#include "cliffcauchy/multivector.hpp"

namespace cliffcauchy {

enum class KernelId {
  E_X, E_I, E_J, E_K,
  E_z, E_zdag, E_zJ, E_zdagJ,
  K_herm,
  EulerE_on_E_z, EulerE_on_E_zdag, EulerE_on_E_zJ, EulerE_on_E_zdagJ,
};

const char* kernel_name(KernelId id);
bool kernel_admissible(KernelId id, int m);

/// Evaluations closer than this to the singular point are rejected; quadrature
/// nodes never get near a singularity in a valid scenario.
constexpr double kSingularCutoff = 1e-6;

struct KernelEval {
  Multivector value;
  double singular_distance;
};

/// Area of the unit sphere S^{m-1}, computed by quadrature and cross-checked
/// against the closed form on first use (mismatch beyond 1e-9 throws).
double unit_sphere_area(int m);

/// Difference-argument kernels: E_X, E_I/J/K, the projected families and K.
KernelEval eval_kernel(KernelId id, const RealVec& arg);

/// Kernels that depend on source and target beyond their difference
/// (the Euler-acted family); also accepts the difference family.
KernelEval eval_kernel_at(KernelId id, const RealVec& source, const RealVec& target);

/// Field Y -> kernel(Y - pole), singular at the pole.
FieldPtr kernel_field(KernelId id, const RealVec& pole);

/// Martinelli-Bochner scalar factor
///   (n-1)!/(2 pi i)^n (-1)^{j-1} (xi_j^c - z_j^c)/|xi - z|^{2n},
/// to be paired with the pulled-back form [d xi_j].
Complex mb_density_scalar(int j, const std::vector<Complex>& xi, const std::vector<Complex>& z);

struct PdeCheckReport {
  std::vector<std::pair<std::string, double>> residuals;
  [[nodiscard]] double max_residual() const;
};

/// Off-origin cancellations: monogenicity of E_X, the vanishing single actions,
/// the paired Fp cancellations, K against -Dz E_z and DzDag E_zdag, and the
/// four Euler-kernel closed forms against finite differences.
PdeCheckReport kernel_pde_check(int m, int probe_count, std::uint64_t seed,
                                const FDConfig& cfg = {});

enum class MatrixVariant { Herm2x2, Quat4x4, QuatBlock };
const char* matrix_variant_name(MatrixVariant v);

/// Pointwise part of the matrix fundamental-solution statements: every entry of
/// the operator-matrix/kernel-matrix product vanishes away from the origin.
/// The delta normalization lives in the boundary Lemma integrals.
PdeCheckReport matrix_fundamental_check(MatrixVariant variant, int m, int probe_count,
                                        std::uint64_t seed, const FDConfig& cfg = {});

}  // namespace cliffcauchy
