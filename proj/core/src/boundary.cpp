#include "cliffcauchy/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <ostream>

#include <Eigen/Dense>

#include "cliffcauchy/structures.hpp"

namespace cliffcauchy {

namespace {
constexpr double kPi = std::numbers::pi;
}

SurfaceDomain unit_sphere(int m) { return {m, RealVec(m, 0.0), 1.0}; }

const char* measure_name(MeasureKind k) {
  switch (k) {
    case MeasureKind::dS: return "dS";
    case MeasureKind::dSigma_X: return "dSigma_X";
    case MeasureKind::dSigma_XI: return "dSigma_XI";
    case MeasureKind::dSigma_XJ: return "dSigma_XJ";
    case MeasureKind::dSigma_XK: return "dSigma_XK";
    case MeasureKind::dSigma_z: return "dSigma_z";
    case MeasureKind::dSigma_zdag: return "dSigma_zdag";
    case MeasureKind::dSigma_zJ: return "dSigma_zJ";
    case MeasureKind::dSigma_zdagJ: return "dSigma_zdagJ";
  }
  return "?";
}

bool measure_admissible(MeasureKind k, int m) {
  switch (k) {
    case MeasureKind::dS:
    case MeasureKind::dSigma_X:
      return true;
    case MeasureKind::dSigma_XI:
    case MeasureKind::dSigma_z:
    case MeasureKind::dSigma_zdag:
      return m % 2 == 0;
    default:
      return m % 4 == 0;
  }
}

std::vector<MeasureKind> admissible_measures(int m) {
  std::vector<MeasureKind> out;
  for (MeasureKind k :
       {MeasureKind::dS, MeasureKind::dSigma_X, MeasureKind::dSigma_XI, MeasureKind::dSigma_XJ,
        MeasureKind::dSigma_XK, MeasureKind::dSigma_z, MeasureKind::dSigma_zdag,
        MeasureKind::dSigma_zJ, MeasureKind::dSigma_zdagJ})
    if (measure_admissible(k, m)) out.push_back(k);
  return out;
}

void gauss_legendre(int q, std::vector<double>& nodes, std::vector<double>& weights) {
  // Newton iteration on P_q, initialized from the Chebyshev estimate.
  nodes.assign(q, 0.0);
  weights.assign(q, 0.0);
  for (int i = 0; i < q; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  std::reverse(nodes.begin(), nodes.end());
  std::reverse(weights.begin(), weights.end());
}

// ---------------------------------------------------------------------------
// SphereQuadrature
// ---------------------------------------------------------------------------

SphereQuadrature::SphereQuadrature(SurfaceDomain dom, int q) : dom_(std::move(dom)), q_(q) {
  require(dom_.m >= 2 && dom_.m <= kMaxDim, "unsupported boundary dimension");
  require(static_cast<int>(dom_.center.size()) == dom_.m, "domain center dimension mismatch");
  require(dom_.radius > 0.0, "domain radius must be positive");
  require(q >= 4, "quadrature order must be at least 4");

  std::vector<double> gl_nodes, gl_weights;
  gauss_legendre(q_, gl_nodes, gl_weights);
  // Map (-1,1) -> (0,pi).
  polar_nodes_.resize(q_);
  polar_weights_.resize(q_);
  for (int i = 0; i < q_; ++i) {
    polar_nodes_[i] = (gl_nodes[i] + 1.0) * kPi / 2.0;
    polar_weights_[i] = gl_weights[i] * kPi / 2.0;
  }
  const int nphi = 2 * q_;
  azimuth_nodes_.resize(nphi);
  for (int j = 0; j < nphi; ++j) azimuth_nodes_[j] = 2.0 * kPi * (j + 0.5) / nphi;
  azimuth_weight_ = 2.0 * kPi / nphi;

  count_ = static_cast<std::size_t>(nphi);
  for (int a = 0; a < dom_.m - 2; ++a) count_ *= static_cast<std::size_t>(q_);

  // Orientation self-test: the tangent frame must reproduce the outward normal
  // with positive sign through the generalized cross product.  Fail loudly.
  QuadratureNode probe = node(count_ / 3);
  RealVec cross(dom_.m, 0.0);
  Eigen::MatrixXd minor(dom_.m - 1, dom_.m - 1);
  for (int j = 0; j < dom_.m; ++j) {
    for (int r = 0, rr = 0; r < dom_.m; ++r) {
      if (r == j) continue;
      for (int c = 0; c < dom_.m - 1; ++c) minor(rr, c) = probe.tangents[c][r];
      ++rr;
    }
    cross[j] = ((j % 2 == 0) ? 1.0 : -1.0) * minor.determinant();
  }
  double dot = 0.0;
  for (int j = 0; j < dom_.m; ++j) dot += cross[j] * probe.normal[j];
  require(dot > 0.0, "quadrature frame orientation flipped against the outward normal");
  require(std::abs(vec_norm(cross) - probe.metric) <= 1e-9 * probe.metric,
          "tangent frame metric disagrees with the closed-form jacobian");
}

void SphereQuadrature::angles_of(std::size_t i, std::vector<double>& angles,
                                 double& pweight) const {
  const int m = dom_.m;
  angles.assign(m - 1, 0.0);
  pweight = azimuth_weight_;
  std::size_t idx = i;
  const std::size_t nphi = static_cast<std::size_t>(2 * q_);
  angles[m - 2] = azimuth_nodes_[idx % nphi];
  idx /= nphi;
  for (int a = m - 3; a >= 0; --a) {
    std::size_t k = idx % static_cast<std::size_t>(q_);
    idx /= static_cast<std::size_t>(q_);
    angles[a] = polar_nodes_[k];
    pweight *= polar_weights_[k];
  }
}

QuadratureNode SphereQuadrature::build_node(const std::vector<double>& angles,
                                            double pweight) const {
  const int m = dom_.m;
  const double R = dom_.radius;

  // Unit direction u and partials du/dangle_a.
  std::vector<double> s(m - 2), c(m - 2);
  for (int a = 0; a < m - 2; ++a) {
    s[a] = std::sin(angles[a]);
    c[a] = std::cos(angles[a]);
  }
  const double phi = angles[m - 2];
  RealVec u(m, 0.0);
  {
    double prod = 1.0;
    for (int i = 0; i < m - 2; ++i) {
      u[i] = prod * c[i];
      prod *= s[i];
    }
    u[m - 2] = prod * std::cos(phi);
    u[m - 1] = prod * std::sin(phi);
  }

  QuadratureNode node;
  node.point = vec_add(dom_.center, vec_scale(u, R));
  node.normal = u;
  node.tangents.assign(m - 1, RealVec(m, 0.0));
  for (int a = 0; a < m - 2; ++a) {
    RealVec& t = node.tangents[a];
    // d u_i / d theta_a: zero for i < a, -prod*s_a at i == a, u_i * c_a/s_a for i > a.
    double prod = 1.0;
    for (int k = 0; k < a; ++k) prod *= s[k];
    t[a] = -prod * s[a] * R;
    const double ratio = c[a] / s[a];
    for (int i = a + 1; i < m; ++i) t[i] = u[i] * ratio * R;
  }
  {
    RealVec& t = node.tangents[m - 2];
    t[m - 2] = -u[m - 1] * R;
    t[m - 1] = u[m - 2] * R;
  }

  double metric = std::pow(R, m - 1);
  for (int a = 0; a < m - 2; ++a) metric *= std::pow(s[a], m - 2 - a);
  node.metric = metric;
  node.param_weight = pweight;
  node.weight = pweight * metric;
  return node;
}

QuadratureNode SphereQuadrature::node(std::size_t i) const {
  require(i < count_, "node index out of range");
  std::vector<double> angles;
  double pweight = 0.0;
  angles_of(i, angles, pweight);
  return build_node(angles, pweight);
}

QuadratureNode SphereQuadrature::node_at(const std::vector<double>& angles) const {
  require(static_cast<int>(angles.size()) == dom_.m - 1, "angle count mismatch");
  return build_node(angles, 0.0);
}

double SphereQuadrature::weight_sum() const {
  double total = std::pow(dom_.radius, dom_.m - 1) * 2.0 * kPi;
  for (int a = 0; a < dom_.m - 2; ++a) {
    double sum = 0.0;
    for (int k = 0; k < q_; ++k)
      sum += polar_weights_[k] * std::pow(std::sin(polar_nodes_[k]), dom_.m - 2 - a);
    total *= sum;
  }
  return total;
}

namespace {

// Deterministic pairwise-tree reduction: the tree shape depends only on the
// index range, never on thread scheduling.
template <typename Value, typename Leaf, typename Zero>
Value tree_reduce(std::size_t lo, std::size_t hi, const Leaf& leaf, const Zero& zero,
                  int depth) {
  constexpr std::size_t kChunk = 256;
  if (hi - lo <= kChunk) {
    Value acc = zero();
    for (std::size_t i = lo; i < hi; ++i) acc += leaf(i);
    return acc;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  if (depth > 0) {
    auto right = std::async(std::launch::async, [&] {
      return tree_reduce<Value>(mid, hi, leaf, zero, depth - 1);
    });
    Value left = tree_reduce<Value>(lo, mid, leaf, zero, depth - 1);
    left += right.get();
    return left;
  }
  Value left = tree_reduce<Value>(lo, mid, leaf, zero, 0);
  left += tree_reduce<Value>(mid, hi, leaf, zero, 0);
  return left;
}

int depth_for_jobs(int jobs) {
  int depth = 0;
  while ((1 << depth) < jobs && depth < 6) ++depth;
  return depth;
}

}  // namespace

Multivector SphereQuadrature::integrate(
    const std::function<Multivector(const QuadratureNode&)>& term, int jobs) const {
  const int m = dom_.m;
  return tree_reduce<Multivector>(
      0, count_, [&](std::size_t i) { return term(node(i)); },
      [m] { return Multivector(m); }, depth_for_jobs(jobs));
}

Complex SphereQuadrature::integrate_scalar(
    const std::function<Complex(const QuadratureNode&)>& term, int jobs) const {
  return tree_reduce<Complex>(
      0, count_, [&](std::size_t i) { return term(node(i)); },
      [] { return Complex(0.0, 0.0); }, depth_for_jobs(jobs));
}

void SphereQuadrature::dump_csv(std::ostream& os) const {
  const int m = dom_.m;
  for (int a = 0; a < m; ++a) os << "y" << a + 1 << ",";
  for (int a = 0; a < m; ++a) os << "nu" << a + 1 << ",";
  os << "w\n";
  os.precision(17);
  for (std::size_t i = 0; i < count_; ++i) {
    QuadratureNode nd = node(i);
    for (int a = 0; a < m; ++a) os << nd.point[a] << ",";
    for (int a = 0; a < m; ++a) os << nd.normal[a] << ",";
    os << nd.weight << "\n";
  }
}

// ---------------------------------------------------------------------------
// Measures
// ---------------------------------------------------------------------------

Complex MeasureFormConstants::herm_constant(int n) const {
  Complex c(1.0, 0.0);
  for (int i = 0; i < n; ++i) c *= Complex(0.0, -1.0);
  return c * std::pow(2.0, n - 1 + two_exponent_delta);
}

Multivector eval_measure(MeasureKind kind, const QuadratureNode& node,
                         const MeasureFormConstants& conv) {
  const int m = static_cast<int>(node.normal.size());
  require(measure_admissible(kind, m), "measure not admissible in this dimension");
  switch (kind) {
    case MeasureKind::dS:
      return Multivector::scalar(m, Complex(1.0, 0.0));
    case MeasureKind::dSigma_X:
      return vector_embed(node.normal);
    default:
      break;
  }
  const StructureSet& S = StructureSet::get(m);
  Multivector nu = vector_embed(node.normal);
  switch (kind) {
    case MeasureKind::dSigma_XI: return S.I.apply(nu);
    case MeasureKind::dSigma_XJ: return S.J.apply(nu);
    case MeasureKind::dSigma_XK: return S.K.apply(nu);
    default:
      break;
  }
  const Complex half_c = conv.herm_constant(S.n) * 0.5;
  const Complex iu(0.0, 1.0);
  switch (kind) {
    case MeasureKind::dSigma_z:
      return (nu + iu * S.I.apply(nu)) * (-half_c);
    case MeasureKind::dSigma_zdag:
      return (nu - iu * S.I.apply(nu)) * half_c;
    case MeasureKind::dSigma_zJ:
      return (S.J.apply(nu) + iu * S.K.apply(nu)) * (-half_c);
    case MeasureKind::dSigma_zdagJ:
      return (S.J.apply(nu) - iu * S.K.apply(nu)) * half_c;
    default:
      break;
  }
  require(false, "unhandled measure kind");
  return Multivector(m);
}

namespace {

// hat(dX_j) with the (-1)^{j-1} sign folded in, evaluated on the frame.
RealVec cross_product(const std::vector<RealVec>& tangents, int m) {
  RealVec out(m, 0.0);
  Eigen::MatrixXd minor(m - 1, m - 1);
  for (int j = 0; j < m; ++j) {
    for (int r = 0, rr = 0; r < m; ++r) {
      if (r == j) continue;
      for (int c = 0; c < m - 1; ++c) minor(rr, c) = tangents[c][r];
      ++rr;
    }
    out[j] = ((j % 2 == 0) ? 1.0 : -1.0) * minor.determinant();
  }
  return out;
}

std::vector<RealVec> rotate_frame(const std::vector<RealVec>& tangents,
                                  const StructureMatrix& M) {
  std::vector<RealVec> out;
  out.reserve(tangents.size());
  for (const auto& t : tangents) out.push_back(M.apply(t));
  return out;
}

Complex dz_on(const RealVec& t, int k, bool conj) {
  Complex v(t[2 * k - 2], t[2 * k - 1]);
  return conj ? std::conj(v) : v;
}

}  // namespace

Complex hermitian_form_pullback(int j, bool conjugate_slot, const QuadratureNode& node) {
  // Interleaved wedge (dz_1, dz_1^c, ..., dz_n, dz_n^c) with the slot-j pair
  // reduced to a single factor: dz_j^c for hat(dz_j), dz_j for hat(dz_j^c).
  const int m = static_cast<int>(node.normal.size());
  const int n = m / 2;
  Eigen::MatrixXcd A(m - 1, m - 1);
  int row = 0;
  for (int k = 1; k <= n; ++k) {
    if (k == j) {
      for (int a = 0; a < m - 1; ++a)
        A(row, a) = dz_on(node.tangents[a], k, !conjugate_slot);
      ++row;
    } else {
      for (int a = 0; a < m - 1; ++a) A(row, a) = dz_on(node.tangents[a], k, false);
      ++row;
      for (int a = 0; a < m - 1; ++a) A(row, a) = dz_on(node.tangents[a], k, true);
      ++row;
    }
  }
  return A.determinant() / node.metric;
}

Complex mb_form_pullback(int j, const QuadratureNode& node) {
  // [d xi_j] = dxi_1^c ^ ... (omit j) ... ^ dxi_n^c ^ dxi_1 ^ ... ^ dxi_n.
  const int m = static_cast<int>(node.normal.size());
  const int n = m / 2;
  Eigen::MatrixXcd A(m - 1, m - 1);
  int row = 0;
  for (int k = 1; k <= n; ++k) {
    if (k == j) continue;
    for (int a = 0; a < m - 1; ++a) A(row, a) = dz_on(node.tangents[a], k, true);
    ++row;
  }
  for (int k = 1; k <= n; ++k) {
    for (int a = 0; a < m - 1; ++a) A(row, a) = dz_on(node.tangents[a], k, false);
    ++row;
  }
  return A.determinant() / node.metric;
}

Multivector eval_measure_pullback(MeasureKind kind, const QuadratureNode& node) {
  const int m = static_cast<int>(node.normal.size());
  require(measure_admissible(kind, m), "measure not admissible in this dimension");
  switch (kind) {
    case MeasureKind::dS: {
      RealVec cross = cross_product(node.tangents, m);
      return Multivector::scalar(m, Complex(vec_norm(cross) / node.metric, 0.0));
    }
    case MeasureKind::dSigma_X: {
      RealVec cross = cross_product(node.tangents, m);
      return vector_embed(cross) * (1.0 / node.metric);
    }
    case MeasureKind::dSigma_XI:
    case MeasureKind::dSigma_XJ:
    case MeasureKind::dSigma_XK: {
      const StructureSet& S = StructureSet::get(m);
      const StructureMatrix& M = (kind == MeasureKind::dSigma_XI)   ? S.I
                                 : (kind == MeasureKind::dSigma_XJ) ? S.J
                                                                    : S.K;
      RealVec cross = cross_product(rotate_frame(node.tangents, M), m);
      return vector_embed(cross) * (1.0 / node.metric);
    }
    default:
      break;
  }
  const StructureSet& S = StructureSet::get(m);
  Multivector out(m);
  switch (kind) {
    case MeasureKind::dSigma_z:
      for (int k = 1; k <= S.n; ++k)
        out -= S.witt.fdag[k - 1] * hermitian_form_pullback(k, false, node);
      return out;
    case MeasureKind::dSigma_zdag:
      for (int k = 1; k <= S.n; ++k)
        out += S.witt.f[k - 1] * hermitian_form_pullback(k, true, node);
      return out;
    case MeasureKind::dSigma_zJ:
      for (int j = 1; j <= S.p; ++j) {
        out -= S.witt.f[2 * j - 2] * hermitian_form_pullback(2 * j, false, node);
        out += S.witt.f[2 * j - 1] * hermitian_form_pullback(2 * j - 1, false, node);
      }
      return out;
    case MeasureKind::dSigma_zdagJ:
      for (int j = 1; j <= S.p; ++j) {
        out += S.witt.fdag[2 * j - 2] * hermitian_form_pullback(2 * j, true, node);
        out -= S.witt.fdag[2 * j - 1] * hermitian_form_pullback(2 * j - 1, true, node);
      }
      return out;
    default:
      break;
  }
  require(false, "unhandled measure kind");
  return Multivector(m);
}

// ---------------------------------------------------------------------------
// Boundary integrals
// ---------------------------------------------------------------------------

Multivector boundary_integral(const SphereQuadrature& quad, const PointFn& A, MeasureKind kind,
                              const PointFn& B, int jobs) {
  return boundary_integral_sum(quad, {{A, kind}}, B, jobs);
}

Multivector boundary_integral_sum(const SphereQuadrature& quad,
                                  const std::vector<std::pair<PointFn, MeasureKind>>& pairs,
                                  const PointFn& B, int jobs) {
  return boundary_integral_sum_filtered(quad, pairs, B, nullptr, jobs);
}

Multivector boundary_integral_sum_filtered(
    const SphereQuadrature& quad, const std::vector<std::pair<PointFn, MeasureKind>>& pairs,
    const PointFn& B, const std::function<bool(const QuadratureNode&)>& keep, int jobs) {
  const int m = quad.domain().m;
  auto term = [&](const QuadratureNode& node) -> Multivector {
    if (keep && !keep(node)) return Multivector(m);
    Multivector right =
        B ? B(node.point) : Multivector::scalar(m, Complex(1.0, 0.0));
    Multivector acc(m);
    for (const auto& [A, kind] : pairs) {
      Multivector density = eval_measure(kind, node);
      Multivector piece = A ? (A(node.point) * density) * right : density * right;
      acc += piece;
    }
    return acc * node.weight;
  };
  return quad.integrate(term, jobs);
}

double sphere_area_closed_form(int m) {
  return 2.0 * std::pow(kPi, m / 2.0) / std::tgamma(m / 2.0);
}

}  // namespace cliffcauchy
