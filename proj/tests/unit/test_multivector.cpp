#include <doctest.h>

#include <random>

#include "cliffcauchy/multivector.hpp"

using namespace cliffcauchy;

namespace {

Multivector random_mv(int dim, std::mt19937_64& rng, int max_terms = 6) {
  std::uniform_int_distribution<int> blade(0, (1 << dim) - 1);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  Multivector m(dim);
  for (int t = 0; t < max_terms; ++t)
    m.add_term(static_cast<Blade>(blade(rng)), Complex(coeff(rng), coeff(rng)));
  m.finalize();
  return m;
}

}  // namespace

TEST_CASE("generator relations") {
  Multivector e1 = Multivector::basis_vector(4, 1);
  Multivector e2 = Multivector::basis_vector(4, 2);

  CHECK((e1 * e1 + Multivector::scalar(4, 1.0)).norm_inf() == 0.0);
  CHECK((e1 * e2 - Multivector::single_blade(4, 0b11, 1.0)).norm_inf() == 0.0);
  CHECK((e2 * e1 + Multivector::single_blade(4, 0b11, 1.0)).norm_inf() == 0.0);

  // (1 + e1)(1 - e1) = 1 - e1^2 = 2
  Multivector one = Multivector::scalar(4, 1.0);
  CHECK(((one + e1) * (one - e1) - Multivector::scalar(4, 2.0)).norm_inf() == 0.0);

  // anticommutation with the squaring rule, exactly
  for (int a = 1; a <= 4; ++a) {
    for (int b = 1; b <= 4; ++b) {
      Multivector ea = Multivector::basis_vector(4, a);
      Multivector eb = Multivector::basis_vector(4, b);
      Multivector anti = ea * eb + eb * ea;
      if (a == b) anti += Multivector::scalar(4, 2.0);
      CHECK(anti.norm_inf() == 0.0);
    }
  }
}

TEST_CASE("conjugation") {
  Multivector e1 = Multivector::basis_vector(4, 1);
  Multivector e2 = Multivector::basis_vector(4, 2);
  CHECK((e1.conjugate() + e1).norm_inf() == 0.0);
  CHECK(((e1 * e2).conjugate() + e1 * e2).norm_inf() == 0.0);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 64; ++t) {
    Multivector a = random_mv(4, rng);
    Multivector b = random_mv(4, rng);
    CHECK((a.conjugate().conjugate() - a).norm_inf() == 0.0);
    CHECK(((a * b).conjugate() - b.conjugate() * a.conjugate()).norm_inf() <= 1e-14);
  }
}

TEST_CASE("vector embedding and squares") {
  CHECK((vector_embed({1.0, 0.0, 0.0, 0.0}) - Multivector::basis_vector(4, 1)).norm_inf() ==
        0.0);

  Multivector v = vector_embed({1.0, 1.0, 0.0, 0.0});
  CHECK((v * v + Multivector::scalar(4, 2.0)).norm_inf() == 0.0);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    RealVec X(6);
    double n2 = 0.0;
    for (auto& x : X) {
      x = coord(rng);
      n2 += x * x;
    }
    Multivector xv = vector_embed(X);
    CHECK((xv * xv + Multivector::scalar(6, n2)).norm_inf() <= 1e-12);
  }
}

TEST_CASE("grade projection") {
  Multivector a = Multivector::scalar(4, 1.0) + Multivector::basis_vector(4, 1) +
                  Multivector::single_blade(4, 0b11, 1.0);
  CHECK((a.grade(1) - Multivector::basis_vector(4, 1)).norm_inf() == 0.0);

  Multivector sum(4);
  for (int k = 0; k <= 4; ++k) sum += a.grade(k);
  CHECK((sum - a).norm_inf() == 0.0);

  Multivector e1 = Multivector::basis_vector(4, 1);
  Multivector e2 = Multivector::basis_vector(4, 2);
  CHECK(((e1 * e2).grade(2) - e1 * e2).norm_inf() == 0.0);

  CHECK_THROWS_AS(a.grade(5), std::invalid_argument);
}

TEST_CASE("associativity on random triples") {
  std::mt19937_64 rng(13);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    Multivector a = random_mv(4, rng);
    Multivector b = random_mv(4, rng);
    Multivector c = random_mv(4, rng);
    worst = std::max(worst, ((a * b) * c - a * (b * c)).norm_inf());
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("dimension mismatch is rejected") {
  Multivector a(4), b(6);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(17);
  Multivector a = random_mv(6, rng);
  auto j = a.to_json();
  CHECK(j["dim"] == 6);
  Multivector b = Multivector::from_json(j);
  CHECK((a - b).norm_inf() == 0.0);
  // blade lists ascending
  for (const auto& t : j["terms"]) {
    auto idx = t["blade"].get<std::vector<int>>();
    for (std::size_t i = 1; i < idx.size(); ++i) CHECK(idx[i - 1] < idx[i]);
  }
}
