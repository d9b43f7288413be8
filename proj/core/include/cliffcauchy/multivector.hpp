#pragma once

// Complex Clifford algebra C_m over generators e_1..e_m with signature (0,m):
// e_a e_b = -e_b e_a for a != b and e_a^2 = -1.  Blades are bitmasks over the
// generators, coefficients are complex doubles, storage is sparse.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace cliffcauchy {

using Complex = std::complex<double>;
using Blade = std::uint16_t;           // bit k-1 set  <=>  generator e_k present
using RealVec = std::vector<double>;   // point / vector coordinates in R^m

constexpr int kMaxDim = 16;

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

/// Grade of a blade = number of generators present.
int blade_grade(Blade b);

/// Sign of the geometric product e_A e_B (includes e_a^2 = -1 contributions).
int product_sign(Blade a, Blade b);

/// Ascending 1-based generator indices of a blade.
std::vector<int> blade_indices(Blade b);

/// Blade from ascending 1-based generator indices.
Blade blade_from_indices(const std::vector<int>& indices);

class Multivector {
public:
  explicit Multivector(int dim);

  static Multivector scalar(int dim, Complex value);
  static Multivector basis_vector(int dim, int alpha);  // e_alpha, alpha in 1..dim
  static Multivector single_blade(int dim, Blade mask, Complex coeff);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const std::vector<std::pair<Blade, Complex>>& terms() const { return terms_; }
  [[nodiscard]] Complex coeff(Blade mask) const;
  [[nodiscard]] Complex scalar_part() const { return coeff(0); }
  [[nodiscard]] bool empty() const { return terms_.empty(); }

  Multivector& operator+=(const Multivector& rhs);
  Multivector& operator-=(const Multivector& rhs);
  Multivector& operator*=(Complex s);
  Multivector& operator*=(double s);

  friend Multivector operator+(Multivector lhs, const Multivector& rhs) { return lhs += rhs; }
  friend Multivector operator-(Multivector lhs, const Multivector& rhs) { return lhs -= rhs; }
  friend Multivector operator*(Multivector lhs, Complex s) { return lhs *= s; }
  friend Multivector operator*(Complex s, Multivector rhs) { return rhs *= s; }
  friend Multivector operator*(Multivector lhs, double s) { return lhs *= s; }
  friend Multivector operator*(double s, Multivector rhs) { return rhs *= s; }
  friend Multivector operator-(const Multivector& a) { return a * Complex(-1.0, 0.0); }

  /// Geometric product.  Throws on dimension mismatch.
  friend Multivector operator*(const Multivector& a, const Multivector& b);

  /// Clifford conjugation: complex-linear anti-automorphism with bar(e_a) = -e_a;
  /// multiplies a grade-k blade by (-1)^{k(k+1)/2}.
  [[nodiscard]] Multivector conjugate() const;

  /// Projection onto grade k.  Throws when k is outside 0..dim.
  [[nodiscard]] Multivector grade(int k) const;

  /// Max grade with a nonzero term (0 for the zero element).
  [[nodiscard]] int max_grade() const;

  [[nodiscard]] double norm_inf() const;   // max |coefficient|
  [[nodiscard]] double norm2() const;      // coefficient l2 norm
  [[nodiscard]] bool is_zero(double tol = 0.0) const { return norm_inf() <= tol; }

  /// Drop terms with |coefficient| <= tol (tol 0 drops exact zeros only).
  Multivector& prune(double tol = 0.0);

  [[nodiscard]] std::string str() const;

  [[nodiscard]] nlohmann::ordered_json to_json() const;
  static Multivector from_json(const nlohmann::json& j);

  /// Internal builder: terms must end up sorted/unique via finalize().
  void add_term(Blade mask, Complex c) { terms_.emplace_back(mask, c); }
  void finalize();

private:
  int dim_;
  std::vector<std::pair<Blade, Complex>> terms_;  // sorted by blade, unique, no exact zeros
};

/// Grade-1 embedding of a real vector: sum_a X_a e_a.
Multivector vector_embed(const RealVec& X);

/// Grade-1 embedding with complex coordinates.
Multivector vector_embed(const std::vector<Complex>& X, int dim);

/// Inverse of vector_embed for grade-1 multivectors (throws otherwise).
std::vector<Complex> vector_coords(const Multivector& v);

double vec_norm(const RealVec& X);
RealVec vec_sub(const RealVec& a, const RealVec& b);
RealVec vec_add(const RealVec& a, const RealVec& b);
RealVec vec_scale(const RealVec& a, double s);

}  // namespace cliffcauchy
