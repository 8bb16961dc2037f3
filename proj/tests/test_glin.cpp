#include "support.hpp"

using namespace test;

namespace {

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::size_t rank) {
  Matrix m(rows, cols, rank);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = random_scalar(rng, rank, true);
  return m;
}

Vector random_vector(Rng& rng, std::size_t n, std::size_t rank) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_scalar(rng, rank, true));
  return v;
}

GradedMap random_graded_map(Rng& rng, const GradedModule& s, const GradedModule& t, int degree, std::size_t rank) {
  GradedMap f{s, t, degree, {}};
  for (const auto& [d, r] : s.dims) f.blocks[d] = random_matrix(rng, t.dim(d + degree), r, rank);
  return f;
}

}  // namespace

TEST_CASE("solve_linear: identity and inconsistent systems") {
  const Vector b{re(3, {1}), re(-1, {0}), re(0, {2})};
  auto x = solve_linear(Matrix::identity(3, 1), b);
  REQUIRE(x);
  CHECK(*x == b);
  Matrix zero(1, 1, 0);
  CHECK_FALSE(solve_linear(zero, {re(1)}));
}

TEST_CASE("solve_linear: multiply back on random systems with a known solution") {
  Rng rng(21);
  for (std::size_t rank : {0u, 1u, 2u})
    for (int t = 0; t < 30; ++t) {
      const Matrix a = random_matrix(rng, 6, 8, rank);
      const Vector b = a.apply(random_vector(rng, 8, rank));
      auto x = solve_linear(a, b);
      REQUIRE(x);
      CHECK(a.apply(*x) == b);
    }
}

TEST_CASE("solve_linear: rank-deficient systems over B with an ideal obstruction") {
  // A = [[1, 1], [1, 1 + ε]]: the body system is rank one, ε carries the second equation.
  Matrix a(2, 2, 1);
  a.at(0, 0) = re(1, {0});
  a.at(0, 1) = re(1, {0});
  a.at(1, 0) = re(1, {0});
  a.at(1, 1) = re(1, {1});
  // x = (1, 2ε) gives b = (1 + 2ε, 1 + 2ε); a body-first pass that fixes x_0 = (1, 0) still works.
  const Vector b{re(1, {2}), re(1, {2})};
  auto x = solve_linear(a, b);
  REQUIRE(x);
  CHECK(a.apply(*x) == b);
  // b = (0, ε): solvable only with body solution (−1, 1), not with the free variable at 0.
  const Vector b2{re(0, {0}), re(0, {1})};
  auto x2 = solve_linear(a, b2);
  REQUIRE(x2);
  CHECK(a.apply(*x2) == b2);
  // The reduced system of (1, ε) against [[1],[1]] is solvable, the full one is not.
  Matrix col(2, 1, 1);
  col.at(0, 0) = re(1, {0});
  col.at(1, 0) = re(1, {0});
  CHECK_FALSE(solve_linear(col, {re(1, {0}), re(1, {1})}));
  CHECK(solve_rational({{1}, {1}}, {Rational(1), Rational(1)}, 1));
}

TEST_CASE("kernel_basis spans the body nullspace") {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = random_matrix(rng, 3, 6, 0);
    const auto k = kernel_basis(a);
    CHECK(k.size() >= 3);
    for (const auto& v : k) {
      Vector x;
      for (const auto& q : v) x.push_back(RingElement::scalar(q, 0));
      CHECK(is_zero(a.apply(x)));
    }
  }
}

TEST_CASE("compose_maps: identity, grading and associativity") {
  GradedModule m, n, p, q;
  m.set(0, 2);
  m.set(1, 1);
  n.set(0, 1);
  n.set(1, 3);
  n.set(2, 2);
  p.set(1, 2);
  p.set(2, 2);
  q.set(2, 1);
  q.set(3, 2);
  Rng rng(8);
  for (std::size_t rank : {0u, 1u}) {
    const GradedMap f = random_graded_map(rng, m, n, 1, rank);
    const GradedMap g = random_graded_map(rng, n, p, 0, rank);
    const GradedMap h = random_graded_map(rng, p, q, 1, rank);
    const GradedMap gi = compose_maps(g, GradedMap::identity(n, rank), rank);
    for (const auto& [d, r] : n.dims) CHECK(gi.block(d, rank) == g.block(d, rank));
    const GradedMap gf = compose_maps(g, f, rank);
    CHECK(gf.degree == 1);
    const GradedMap left = compose_maps(compose_maps(h, g, rank), f, rank);
    const GradedMap right = compose_maps(h, gf, rank);
    CHECK(left.degree == 2);
    for (const auto& [d, r] : m.dims) CHECK(left.block(d, rank) == right.block(d, rank));
  }
  const GradedMap f = random_graded_map(rng, m, n, 0, 0);
  CHECK_THROWS_AS(compose_maps(f, f, 0), StructuralError);
}
