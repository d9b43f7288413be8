#include "cliffcauchy/structures.hpp"

#include <map>
#include <mutex>

namespace cliffcauchy {

namespace {

long binom(int n, int r) {
  if (r < 0 || r > n) return 0;
  long v = 1;
  for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
  return v;
}

void ascending_subsets(int n, int r, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == r) {
      out.push_back(cur);
      return;
    }
    for (int k = start; k <= n; ++k) {
      cur.push_back(k);
      self(self, k + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
}

}  // namespace

RealVec StructureMatrix::apply(const RealVec& v) const {
  require(static_cast<int>(v.size()) == m, "structure matrix dimension mismatch");
  RealVec out(m, 0.0);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) out[j] += v[i] * mat(i, j);
  return out;
}

Multivector StructureMatrix::apply(const Multivector& v) const {
  require(v.dim() == m, "structure matrix dimension mismatch");
  auto coords = vector_coords(v);
  std::vector<Complex> out(m, Complex(0.0, 0.0));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) out[j] += coords[i] * mat(i, j);
  return vector_embed(out, m);
}

StructureMatrix structure_I(int m) {
  require(m >= 2 && m % 2 == 0, "complex structure I requires even dimension");
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < m / 2; ++k) {
    M(2 * k, 2 * k + 1) = 1.0;
    M(2 * k + 1, 2 * k) = -1.0;
  }
  return {'I', m, std::move(M)};
}

StructureMatrix structure_J(int m) {
  require(m >= 4 && m % 4 == 0, "complex structure J requires fourfold dimension");
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
  for (int b = 0; b < m / 4; ++b) {
    int o = 4 * b;
    M(o + 0, o + 2) = 1.0;
    M(o + 1, o + 3) = -1.0;
    M(o + 2, o + 0) = -1.0;
    M(o + 3, o + 1) = 1.0;
  }
  return {'J', m, std::move(M)};
}

StructureMatrix structure_K(int m) {
  StructureMatrix I = structure_I(m);
  StructureMatrix J = structure_J(m);
  return {'K', m, I.mat * J.mat};
}

WittFrame build_witt_frame(int n) {
  require(n >= 1 && 2 * n <= kMaxDim, "witt frame half-dimension out of range");
  int m = 2 * n;
  WittFrame w;
  w.n = n;
  w.idem = Multivector::scalar(m, Complex(1.0, 0.0));
  w.beta = Multivector(m);
  for (int k = 1; k <= n; ++k) {
    Multivector e_odd = Multivector::basis_vector(m, 2 * k - 1);
    Multivector e_even = Multivector::basis_vector(m, 2 * k);
    Multivector fk = (e_odd - Complex(0.0, 1.0) * e_even) * Complex(-0.5, 0.0);
    Multivector fdk = (e_odd + Complex(0.0, 1.0) * e_even) * Complex(0.5, 0.0);
    w.f.push_back(fk);
    w.fdag.push_back(fdk);
    w.idem = w.idem * (fk * fdk);
    w.beta += fdk * fk;
  }
  return w;
}

std::vector<SpinorPart> spinor_parts(int n) {
  WittFrame w = build_witt_frame(n);
  std::vector<SpinorPart> parts;
  for (int r = 0; r <= n; ++r) {
    SpinorPart part;
    part.r = r;
    std::vector<std::vector<int>> subsets;
    ascending_subsets(n, r, subsets);
    for (const auto& subset : subsets) {
      Multivector v = w.idem;
      for (auto it = subset.rbegin(); it != subset.rend(); ++it)
        v = w.fdag[*it - 1] * v;
      part.basis.push_back(v);
    }
    parts.push_back(std::move(part));
  }
  return parts;
}

PartProjection project_to_part(const Multivector& v, const std::vector<Multivector>& basis) {
  require(!basis.empty(), "projection needs a nonempty basis");
  // Collect the union of blades touched by v and the basis.
  std::map<Blade, int> blade_row;
  auto note = [&](const Multivector& mv) {
    for (const auto& t : mv.terms())
      blade_row.emplace(t.first, static_cast<int>(blade_row.size()));
  };
  note(v);
  for (const auto& b : basis) note(b);

  const int rows = static_cast<int>(blade_row.size());
  const int cols = static_cast<int>(basis.size());
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(rows, cols);
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(rows);
  for (int c = 0; c < cols; ++c)
    for (const auto& t : basis[c].terms()) B(blade_row.at(t.first), c) = t.second;
  for (const auto& t : v.terms()) y(blade_row.at(t.first)) = t.second;

  Eigen::VectorXcd x = B.colPivHouseholderQr().solve(y);
  Multivector proj(v.dim());
  for (int c = 0; c < cols; ++c) proj += basis[c] * Complex(x(c));
  PartProjection out{proj, std::vector<Complex>(x.data(), x.data() + cols),
                     (v - proj).norm2()};
  return out;
}

namespace {

// Basis-coefficient matrix of left multiplication by op, S^r basis -> S^{r2} basis.
Eigen::MatrixXcd part_operator_matrix(const Multivector& op,
                                      const std::vector<Multivector>& from,
                                      const std::vector<Multivector>& to,
                                      double residual_tol = 1e-10) {
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(static_cast<int>(to.size()),
                                              static_cast<int>(from.size()));
  for (std::size_t c = 0; c < from.size(); ++c) {
    Multivector image = op * from[c];
    if (to.empty()) {
      require(image.norm_inf() <= residual_tol, "operator image expected to vanish");
      continue;
    }
    PartProjection pp = project_to_part(image, to);
    require(pp.residual <= residual_tol, "operator image escapes the target part (rank deficiency)");
    for (std::size_t rr = 0; rr < to.size(); ++rr) A(static_cast<int>(rr), static_cast<int>(c)) = pp.coords[rr];
  }
  return A;
}

}  // namespace

namespace {

std::vector<SymplecticCell> build_cells(const StructureSet& S) {
  const int p = S.p;
  const int n = S.n;
  const auto& parts = S.parts;
  constexpr double kKernelThreshold = 1e-10;

  std::vector<SymplecticCell> cells;
  for (int r = 0; r <= p; ++r) {
    // S^r_r = Ker P restricted to S^r, found by singular value thresholding.
    const auto& from = parts[r].basis;
    std::vector<Multivector> kernel;
    if (r < 2) {
      kernel = from;  // P lowers degree by two, so S^0 and S^1 lie in its kernel
    } else {
      Eigen::MatrixXcd A = part_operator_matrix(S.P, from, parts[r - 2].basis);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      int rank = 0;
      for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > kKernelThreshold) ++rank;
      for (int k = rank; k < static_cast<int>(from.size()); ++k) {
        Multivector v(S.m);
        for (std::size_t i = 0; i < from.size(); ++i)
          v += from[i] * Complex(svd.matrixV()(static_cast<int>(i), k));
        kernel.push_back(v);
      }
    }
    long expected = binom(n, r) - binom(n, r - 2);
    require(static_cast<long>(kernel.size()) == expected,
            "unexpected Ker P dimension (rank deficiency)");
    cells.push_back({r, r, kernel});

    // Iterated raising: S^{r+2k}_r = Q^k S^r_r.
    std::vector<Multivector> level = kernel;
    for (int k = 1; k <= p - r; ++k) {
      std::vector<Multivector> next;
      for (const auto& v : level) next.push_back(S.Q * v);
      // Q must stay injective on the cell chain.
      Eigen::MatrixXcd G =
          part_operator_matrix(Multivector::scalar(S.m, 1.0), next, parts[r + 2 * k].basis);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G);
      require(svd.rank() == static_cast<int>(next.size()),
              "Q action lost rank on a symplectic cell");
      cells.push_back({r + 2 * k, r, next});
      level = std::move(next);
    }
  }

  // Completeness: within every homogeneous part the cells must sum to full rank.
  for (int s = 0; s <= n; ++s) {
    std::vector<Multivector> combined;
    for (const auto& cell : cells)
      if (cell.r == s) combined.insert(combined.end(), cell.basis.begin(), cell.basis.end());
    require(static_cast<long>(combined.size()) == binom(n, s),
            "symplectic cells do not fill the homogeneous part");
    Eigen::MatrixXcd G =
        part_operator_matrix(Multivector::scalar(S.m, 1.0), combined, parts[s].basis);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G);
    require(svd.rank() == static_cast<int>(combined.size()),
            "symplectic cell union is rank deficient");
  }
  return cells;
}

}  // namespace

std::vector<SymplecticCell> cell_decomposition(int p) {
  require(p >= 1 && 4 * p <= kMaxDim, "cell decomposition requires fourfold dimension");
  return StructureSet::get(4 * p).cells;
}

const StructureSet& StructureSet::get(int m) {
  static std::map<int, std::unique_ptr<StructureSet>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(m);
  if (it != cache.end()) return *it->second;

  require(m >= 2 && m % 2 == 0 && m <= kMaxDim, "structure set requires even dimension <= 16");
  auto S = std::make_unique<StructureSet>();
  S->m = m;
  S->n = m / 2;
  S->p = (m % 4 == 0) ? m / 4 : 0;
  S->I = structure_I(m);
  S->witt = build_witt_frame(S->n);
  S->parts = spinor_parts(S->n);
  if (S->p > 0) {
    S->J = structure_J(m);
    S->K = structure_K(m);
    S->P = Multivector(m);
    S->Q = Multivector(m);
    for (int j = 1; j <= S->p; ++j) {
      S->P += S->witt.f[2 * j - 1] * S->witt.f[2 * j - 2];
      S->Q += S->witt.fdag[2 * j - 2] * S->witt.fdag[2 * j - 1];
    }
  }
  if (S->p > 0) S->cells = build_cells(*S);
  StructureSet* raw = S.get();
  cache.emplace(m, std::move(S));
  return *raw;
}

std::pair<Multivector, Multivector> hermitian_split(const RealVec& X) {
  int m = static_cast<int>(X.size());
  require(m % 2 == 0, "hermitian split requires even dimension");
  const StructureSet& S = StructureSet::get(m);
  auto zc = complex_coords(X);
  Multivector z(m), zdag(m);
  for (int k = 0; k < S.n; ++k) {
    z += S.witt.f[k] * zc[k];
    zdag += S.witt.fdag[k] * std::conj(zc[k]);
  }
  return {z, zdag};
}

QuaternionicSplit quaternionic_split(const RealVec& X) {
  int m = static_cast<int>(X.size());
  require(m % 4 == 0, "quaternionic split requires fourfold dimension");
  const StructureSet& S = StructureSet::get(m);
  auto [z, zdag] = hermitian_split(X);
  auto zc = complex_coords(X);

  Multivector zJ_coords(m), zdagJ_coords(m);
  for (int j = 1; j <= S.p; ++j) {
    Complex a = zc[2 * j - 2];  // z_{2j-1}
    Complex b = zc[2 * j - 1];  // z_{2j}
    zJ_coords += S.witt.fdag[2 * j - 2] * b - S.witt.fdag[2 * j - 1] * a;
    zdagJ_coords += S.witt.f[2 * j - 2] * std::conj(b) - S.witt.f[2 * j - 1] * std::conj(a);
  }
  Multivector zJ_matrix = S.J.apply(z);
  Multivector zdagJ_matrix = S.J.apply(zdag);
  require((zJ_matrix - zJ_coords).norm_inf() <= 1e-12,
          "J-rotated variable backends disagree");
  require((zdagJ_matrix - zdagJ_coords).norm_inf() <= 1e-12,
          "J-rotated dagger variable backends disagree");
  return {z, zdag, zJ_coords, zdagJ_coords};
}

std::vector<Complex> complex_coords(const RealVec& X) {
  require(X.size() % 2 == 0, "complex coordinates require even dimension");
  std::vector<Complex> out(X.size() / 2);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = Complex(X[2 * k], X[2 * k + 1]);
  return out;
}

Multivector apply_P(const Multivector& v) {
  const StructureSet& S = StructureSet::get(v.dim());
  require(S.p > 0, "P requires fourfold dimension");
  return S.P * v;
}

Multivector apply_Q(const Multivector& v) {
  const StructureSet& S = StructureSet::get(v.dim());
  require(S.p > 0, "Q requires fourfold dimension");
  return S.Q * v;
}

Multivector spinor_component(const Multivector& v, int r) {
  const StructureSet& S = StructureSet::get(v.dim());
  if (r < 0 || r > S.n) return Multivector(v.dim());
  return project_to_part(v, S.parts[r].basis).projection;
}

double spinor_membership_residual(const Multivector& v, int r) {
  const StructureSet& S = StructureSet::get(v.dim());
  require(r >= 0 && r <= S.n, "spinor part index out of range");
  if (v.is_zero()) return 0.0;
  return project_to_part(v, S.parts[r].basis).residual;
}

nlohmann::ordered_json StructureSet::dump() const {
  nlohmann::ordered_json j;
  j["m"] = m;
  j["n"] = n;
  j["p"] = p;
  auto matrix_json = [](const StructureMatrix& M) {
    std::vector<std::vector<double>> rows(M.m, std::vector<double>(M.m));
    for (int r = 0; r < M.m; ++r)
      for (int c = 0; c < M.m; ++c) rows[r][c] = M.mat(r, c);
    return rows;
  };
  j["I"] = matrix_json(I);
  if (p > 0) {
    j["J"] = matrix_json(J);
    j["K"] = matrix_json(K);
  }
  auto mv_list = [](const std::vector<Multivector>& vs) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& v : vs) arr.push_back(v.to_json());
    return arr;
  };
  j["witt"]["f"] = mv_list(witt.f);
  j["witt"]["fdag"] = mv_list(witt.fdag);
  j["witt"]["idem"] = witt.idem.to_json();
  j["witt"]["beta"] = witt.beta.to_json();
  j["parts"] = nlohmann::ordered_json::array();
  for (const auto& part : parts) {
    nlohmann::ordered_json pj;
    pj["r"] = part.r;
    pj["basis"] = mv_list(part.basis);
    j["parts"].push_back(std::move(pj));
  }
  j["cells"] = nlohmann::ordered_json::array();
  for (const auto& cell : cells) {
    nlohmann::ordered_json cj;
    cj["r"] = cell.r;
    cj["s"] = cell.s;
    cj["basis"] = mv_list(cell.basis);
    j["cells"].push_back(std::move(cj));
  }
  return j;
}

}  // namespace cliffcauchy
