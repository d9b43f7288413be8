#include "cliffcauchy/multivector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace cliffcauchy {

int blade_grade(Blade b) { return std::popcount(static_cast<unsigned>(b)); }

int product_sign(Blade a, Blade b) {
  // Transposition parity: count pairs (i in a, j in b) with i > j, then apply
  // the squaring rule e_k^2 = -1 on the common generators.
  int swaps = 0;
  unsigned x = static_cast<unsigned>(a) >> 1;
  while (x != 0) {
    swaps += std::popcount(x & static_cast<unsigned>(b));
    x >>= 1;
  }
  int common = std::popcount(static_cast<unsigned>(a & b));
  return ((swaps + common) % 2 == 0) ? 1 : -1;
}

std::vector<int> blade_indices(Blade b) {
  std::vector<int> out;
  for (int k = 1; k <= kMaxDim; ++k)
    if (b & (Blade(1) << (k - 1))) out.push_back(k);
  return out;
}

Blade blade_from_indices(const std::vector<int>& indices) {
  Blade b = 0;
  for (int k : indices) {
    require(k >= 1 && k <= kMaxDim, "blade generator index out of range");
    Blade bit = Blade(1) << (k - 1);
    require(!(b & bit), "duplicate generator in blade");
    b |= bit;
  }
  return b;
}

Multivector::Multivector(int dim) : dim_(dim) {
  require(dim >= 1 && dim <= kMaxDim, "Multivector dimension must be in 1..16");
}

Multivector Multivector::scalar(int dim, Complex value) {
  Multivector m(dim);
  if (value != Complex(0.0, 0.0)) m.terms_.emplace_back(Blade(0), value);
  return m;
}

Multivector Multivector::basis_vector(int dim, int alpha) {
  Multivector m(dim);
  require(alpha >= 1 && alpha <= dim, "basis vector index out of range");
  m.terms_.emplace_back(Blade(1) << (alpha - 1), Complex(1.0, 0.0));
  return m;
}

Multivector Multivector::single_blade(int dim, Blade mask, Complex coeff) {
  Multivector m(dim);
  require((mask >> dim) == 0, "blade exceeds algebra dimension");
  if (coeff != Complex(0.0, 0.0)) m.terms_.emplace_back(mask, coeff);
  return m;
}

Complex Multivector::coeff(Blade mask) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                             [](const auto& t, Blade b) { return t.first < b; });
  if (it != terms_.end() && it->first == mask) return it->second;
  return {0.0, 0.0};
}

void Multivector::finalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    Blade mask = terms_[i].first;
    Complex sum = terms_[i].second;
    std::size_t j = i + 1;
    while (j < terms_.size() && terms_[j].first == mask) sum += terms_[j++].second;
    if (sum != Complex(0.0, 0.0)) terms_[out++] = {mask, sum};
    i = j;
  }
  terms_.resize(out);
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
  require(dim_ == rhs.dim_, "dimension mismatch in Multivector addition");
  std::vector<std::pair<Blade, Complex>> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  auto a = terms_.begin();
  auto b = rhs.terms_.begin();
  while (a != terms_.end() && b != rhs.terms_.end()) {
    if (a->first < b->first) {
      merged.push_back(*a++);
    } else if (b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Complex s = a->second + b->second;
      if (s != Complex(0.0, 0.0)) merged.emplace_back(a->first, s);
      ++a;
      ++b;
    }
  }
  merged.insert(merged.end(), a, terms_.end());
  merged.insert(merged.end(), b, rhs.terms_.end());
  terms_ = std::move(merged);
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
  return *this += rhs * Complex(-1.0, 0.0);
}

Multivector& Multivector::operator*=(Complex s) {
  if (s == Complex(0.0, 0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= s;
  return *this;
}

Multivector& Multivector::operator*=(double s) { return *this *= Complex(s, 0.0); }

Multivector operator*(const Multivector& a, const Multivector& b) {
  require(a.dim() == b.dim(), "dimension mismatch in Multivector product");
  Multivector out(a.dim());
  auto& acc = out.terms_;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Blade mask = ma ^ mb;
      Complex c = ca * cb * static_cast<double>(product_sign(ma, mb));
      acc.emplace_back(mask, c);
    }
  }
  out.finalize();
  return out;
}

Multivector Multivector::conjugate() const {
  Multivector out(dim_);
  out.terms_ = terms_;
  for (auto& [mask, c] : out.terms_) {
    int k = blade_grade(mask);
    if (((k * (k + 1)) / 2) % 2 != 0) c = -c;
  }
  return out;
}

Multivector Multivector::grade(int k) const {
  require(k >= 0 && k <= dim_, "grade projection index out of range");
  Multivector out(dim_);
  for (const auto& t : terms_)
    if (blade_grade(t.first) == k) out.terms_.push_back(t);
  return out;
}

int Multivector::max_grade() const {
  int g = 0;
  for (const auto& t : terms_) g = std::max(g, blade_grade(t.first));
  return g;
}

double Multivector::norm_inf() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.second));
  return m;
}

double Multivector::norm2() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::norm(t.second);
  return std::sqrt(s);
}

Multivector& Multivector::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& t) { return std::abs(t.second) <= tol; });
  return *this;
}

std::string Multivector::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mask, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    if (mask != 0) {
      os << "*e";
      for (int k : blade_indices(mask)) os << k;
    }
  }
  return os.str();
}

nlohmann::ordered_json Multivector::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = dim_;
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [mask, c] : terms_) {
    nlohmann::ordered_json t;
    t["blade"] = blade_indices(mask);
    t["re"] = c.real();
    t["im"] = c.imag();
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

Multivector Multivector::from_json(const nlohmann::json& j) {
  Multivector m(j.at("dim").get<int>());
  for (const auto& t : j.at("terms")) {
    Blade mask = blade_from_indices(t.at("blade").get<std::vector<int>>());
    m.add_term(mask, Complex(t.at("re").get<double>(), t.at("im").get<double>()));
  }
  m.finalize();
  return m;
}

Multivector vector_embed(const RealVec& X) {
  int m = static_cast<int>(X.size());
  Multivector out(m);
  for (int a = 0; a < m; ++a)
    if (X[a] != 0.0) out.add_term(Blade(1) << a, Complex(X[a], 0.0));
  out.finalize();
  return out;
}

Multivector vector_embed(const std::vector<Complex>& X, int dim) {
  require(static_cast<int>(X.size()) == dim, "coordinate count does not match dim");
  Multivector out(dim);
  for (int a = 0; a < dim; ++a)
    if (X[a] != Complex(0.0, 0.0)) out.add_term(Blade(1) << a, X[a]);
  out.finalize();
  return out;
}

std::vector<Complex> vector_coords(const Multivector& v) {
  std::vector<Complex> out(v.dim(), Complex(0.0, 0.0));
  for (const auto& [mask, c] : v.terms()) {
    require(blade_grade(mask) == 1, "vector_coords requires a grade-1 multivector");
    out[std::countr_zero(static_cast<unsigned>(mask))] = c;
  }
  return out;
}

double vec_norm(const RealVec& X) {
  double s = 0.0;
  for (double x : X) s += x * x;
  return std::sqrt(s);
}

RealVec vec_sub(const RealVec& a, const RealVec& b) {
  require(a.size() == b.size(), "vector size mismatch");
  RealVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RealVec vec_add(const RealVec& a, const RealVec& b) {
  require(a.size() == b.size(), "vector size mismatch");
  RealVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RealVec vec_scale(const RealVec& a, double s) {
  RealVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

}  // namespace cliffcauchy
