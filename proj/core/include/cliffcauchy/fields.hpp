#pragma once

// Function representations and the differential operators acting on them.
// Polynomial fields differentiate exactly; closed-form fields go through
// central finite differences with optional Richardson extrapolation.

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliffcauchy/multivector.hpp"
#include "cliffcauchy/structures.hpp"

namespace cliffcauchy {

enum class OperatorKind {
  Dirac, DiracI, DiracJ, DiracK,
  Dz, DzDag, DzJ, DzDagJ,
  EulerE, Laplacian, MultP, MultQ,
};

enum class Framework { Euclidean, Hermitian, Quaternionic, Osp42 };

const char* operator_name(OperatorKind k);
const char* framework_name(Framework fw);
bool operator_admissible(OperatorKind k, int m);

struct FDConfig {
  double h = 1e-5;          // step, relative to max(1, |X|)
  bool richardson = true;   // combine h and h/2 central stencils
};

class PolynomialField;

class CliffordField {
public:
  virtual ~CliffordField() = default;
  [[nodiscard]] virtual int dim() const = 0;
  [[nodiscard]] virtual Multivector eval(const RealVec& X) const = 0;
  [[nodiscard]] virtual const PolynomialField* polynomial() const { return nullptr; }
  /// Distance to the nearest declared singularity (inf when the field is entire).
  [[nodiscard]] virtual double singular_distance(const RealVec&) const {
    return std::numeric_limits<double>::infinity();
  }
  [[nodiscard]] bool valid_at(const RealVec& X, double cutoff = 0.0) const {
    return singular_distance(X) > cutoff;
  }
};

using FieldPtr = std::shared_ptr<const CliffordField>;
using MultiIndex = std::vector<int>;  // exponent per real coordinate, length dim

class PolynomialField final : public CliffordField {
public:
  explicit PolynomialField(int dim);

  [[nodiscard]] int dim() const override { return dim_; }
  [[nodiscard]] Multivector eval(const RealVec& X) const override;
  [[nodiscard]] const PolynomialField* polynomial() const override { return this; }

  void add_monomial(const MultiIndex& exps, const Multivector& coeff);
  [[nodiscard]] const std::map<MultiIndex, Multivector>& monomials() const { return terms_; }
  [[nodiscard]] bool empty() const { return terms_.empty(); }
  [[nodiscard]] int total_degree() const;

  [[nodiscard]] PolynomialField derivative(int axis) const;  // d/dX_axis, axis in 1..dim
  [[nodiscard]] PolynomialField complex_derivative(int k, bool conjugate_var) const;
  [[nodiscard]] PolynomialField laplacian() const;

  [[nodiscard]] PolynomialField left_mul(const Multivector& a) const;
  [[nodiscard]] PolynomialField right_mul(const Multivector& a) const;
  /// Product with a scalar-valued polynomial (coefficients must be grade 0).
  [[nodiscard]] PolynomialField scalar_poly_mul(const PolynomialField& s) const;

  PolynomialField& operator+=(const PolynomialField& rhs);
  PolynomialField& operator-=(const PolynomialField& rhs);
  PolynomialField& operator*=(Complex s);
  friend PolynomialField operator+(PolynomialField a, const PolynomialField& b) { return a += b; }
  friend PolynomialField operator-(PolynomialField a, const PolynomialField& b) { return a -= b; }
  friend PolynomialField operator*(PolynomialField a, Complex s) { return a *= s; }

  static PolynomialField constant(int dim, const Multivector& value);
  static PolynomialField coordinate(int dim, int axis);                 // X_axis
  static PolynomialField coordinate_z(int dim, int k, bool conjugate);  // z_k or z_k^c

  [[nodiscard]] nlohmann::ordered_json to_json() const;
  static PolynomialField from_json(const nlohmann::json& j);

private:
  int dim_;
  std::map<MultiIndex, Multivector> terms_;
};

/// Closed-form field wrapping a callable, with an optional singular point.
class LambdaField final : public CliffordField {
public:
  LambdaField(int dim, std::function<Multivector(const RealVec&)> fn)
      : dim_(dim), fn_(std::move(fn)) {}
  LambdaField(int dim, std::function<Multivector(const RealVec&)> fn, RealVec singularity)
      : dim_(dim), fn_(std::move(fn)), singularity_(std::move(singularity)) {}

  [[nodiscard]] int dim() const override { return dim_; }
  [[nodiscard]] Multivector eval(const RealVec& X) const override { return fn_(X); }
  [[nodiscard]] double singular_distance(const RealVec& X) const override {
    if (singularity_.empty()) return std::numeric_limits<double>::infinity();
    return vec_norm(vec_sub(X, singularity_));
  }

private:
  int dim_;
  std::function<Multivector(const RealVec&)> fn_;
  RealVec singularity_;
};

/// Apply an operator at a point: exact on polynomial fields, FD otherwise.
/// Rejects evaluation within 10h of a declared singularity.
Multivector apply_operator(OperatorKind kind, const CliffordField& f, const RealVec& X,
                           const FDConfig& cfg = {});

/// Exact symbolic application, polynomial in, polynomial out.
PolynomialField apply_operator_exact(OperatorKind kind, const PolynomialField& f);

enum class IdentityTag {
  DiracFromHermitian,        // Dirac = 2 (Dz - DzDag)
  LaplaceFromDiracSquare,    // Laplacian = - Dirac^2
  HermCirculantFactorization,  // 4 D_(z,zdag) D^dag = diag(Laplacian)
  QuatFullFactorization,       // 2 D D^dag = diag(Laplacian), 4x4 shift-circulant
  QuatBlockFactorization,      // 4 D_(z,zJ) D^dag = diag(Laplacian), block diagonal
};

const char* identity_name(IdentityTag tag);

/// Max residual of the identity over all trial fields, probe points and matrix
/// entries.  Trials must be polynomial (exactness required).
double check_operator_identity(IdentityTag tag, const std::vector<PolynomialField>& trials,
                               const std::vector<RealVec>& probes);

struct MonogenicityReport {
  Framework framework;
  bool exact_path;
  std::vector<std::pair<std::string, double>> residuals;  // per defining operator
  [[nodiscard]] double max_residual() const;
  [[nodiscard]] bool monogenic(double tol) const { return max_residual() <= tol; }
};

std::vector<OperatorKind> framework_operators(Framework fw);
MonogenicityReport classify_monogenicity(const CliffordField& f, Framework fw,
                                         const std::vector<RealVec>& probes,
                                         const FDConfig& cfg = {});

struct FDConvergenceRow {
  double h;
  double central;
  double richardson;
};
struct FDConvergenceReport {
  bool exact_path = false;
  std::vector<FDConvergenceRow> rows;
  double observed_order_central = 0.0;
  double observed_order_richardson = 0.0;
};

/// Residual-vs-h table for h in {1e-3, 1e-4, 1e-5}, measured against the exact
/// derivative for polynomials and against a fine Richardson reference otherwise.
FDConvergenceReport fd_convergence_report(const CliffordField& f, const RealVec& X,
                                          OperatorKind kind);

/// Seeded random polynomial fields (multivector coefficients, total degree <= max_degree).
std::vector<PolynomialField> random_polynomial_fields(int m, int count, int max_degree,
                                                      std::uint64_t seed);

}  // namespace cliffcauchy
