#include "support.hpp"

#include "dgnerve/sweeps.hpp"

using namespace test;

namespace {

struct Shape {
  int n, k;
};

const std::vector<Shape> kShapes{{2, 0}, {2, 1}, {2, 2}, {3, 0}, {3, 1}, {3, 2}, {3, 3}, {4, 0}, {4, 2}, {4, 4}};

}  // namespace

TEST_CASE("extract_horn drops exactly the face and the top") {
  Rng rng(1);
  const NerveSimplex s = sample_simplex(fixtures().front().category, 3, rng);
  const HornData h = extract_horn(s, 1);
  CHECK(h.missing_face() == mask_of({0, 2, 3}));
  CHECK(h.cells.size() == s.cells.size() - 2);
  CHECK(h.cells.count(mask_of({0, 2, 3})) == 0);
  CHECK(h.cells.count(full_mask(3)) == 0);
  CHECK(complete(h, {3, 1, s.cell(mask_of({0, 2, 3})), s.cell(full_mask(3))}) == s);
  CHECK_THROWS(extract_horn(s, 4));
}

TEST_CASE("horns of sampled simplices fill to valid simplices") {
  for (const auto& f : fixtures()) {
    const DgCategory& c = f.category;
    Rng rng(23);
    for (const auto [n, k] : kShapes)
      for (int t = 0; t < 4; ++t) {
        const HornData h = extract_horn(sample_simplex(c, n, rng, {.star = true}), k);
        CHECK(horn_compatibility(c, h).empty());
        const Filler fill = fill_horn(c, h);
        CHECK(fill.n == n);
        CHECK(fill.k == k);
        const Report r = validate_simplex(c, complete(h, fill));
        CHECK_MESSAGE(r.empty(), f.name << " n=" << n << " k=" << k);
        if (k < n) {
          const Obstruction ob = compute_obstruction(c, h);
          CHECK(check_obstruction(c, h, ob).empty());
          CHECK(check_filler_system(c, h, ob, fill).empty());
        }
      }
  }
}

TEST_CASE("identity horns") {
  const DgCategory& c = fixtures().front().category;
  for (const auto [n, k] : kShapes) {
    const NerveSimplex id = identity_simplex(c, 1, n);
    const Filler fill = fill_horn(c, extract_horn(id, k));
    CHECK(validate_simplex(c, complete(extract_horn(id, k), fill)).empty());
  }
}

TEST_CASE("inner obstructions are nonzero and pin the sign (-1)^(n-k)") {
  const DgCategory& c = fixtures().front().category;
  Rng rng(61);
  for (const auto [n, k] : kShapes) {
    if (k == 0 || k == n) continue;
    CHECK(inner_face_sign(n, k) == ((n - k) % 2 == 0 ? 1 : -1));
    int nonzero = 0;
    for (int t = 0; t < 10; ++t) {
      const HornData h = extract_horn(sample_simplex(c, n, rng), k);
      Obstruction ob = compute_obstruction(c, h);
      REQUIRE(check_obstruction(c, h, ob).empty());
      if (ob.U.is_zero()) continue;
      ++nonzero;
      ob.sign = -ob.sign;
      CHECK_FALSE(check_obstruction(c, h, ob).empty());
    }
    // At n = 2 the missing face is an edge, and edges are closed.
    if (n > 2) CHECK(nonzero > 0);
  }
}

TEST_CASE("filler system rejects a perturbed filler") {
  const DgCategory& c = fixtures().front().category;
  Rng rng(6);
  for (const auto [n, k] : kShapes) {
    if (k == n) continue;
    const HornData h = extract_horn(sample_simplex(c, n, rng, {.star = true}), k);
    const Obstruction ob = compute_obstruction(c, h);
    Filler fill = fill_horn(c, h);
    const Morphism delta = random_morphism(c, fill.top.source, fill.top.target, fill.top.degree, rng);
    if (c.d(delta).is_zero()) continue;
    fill.top += delta;
    CHECK_FALSE(check_filler_system(c, h, ob, fill).empty());
    CHECK_FALSE(validate_simplex(c, complete(h, fill)).empty());
  }
}

TEST_CASE("an incompatible horn is reported") {
  const DgCategory& c = fixtures().front().category;
  Rng rng(2);
  HornData h = extract_horn(sample_simplex(c, 3, rng, {.star = true}), 1);
  const Mask e = mask_of({1, 3});
  const Morphism delta = random_morphism(c, h.cells[e].source, h.cells[e].target, 0, rng);
  h.cells[e] += delta;
  if (!c.d(delta).is_zero()) {
    CHECK_FALSE(horn_compatibility(c, h).empty());
    CHECK_THROWS_AS(compute_obstruction(c, h), IncompatibleHorn);
    CHECK_THROWS_AS(fill_horn(c, h), IncompatibleHorn);
  }
  CHECK_THROWS_AS(compute_obstruction(c, extract_horn(sample_simplex(c, 3, rng), 3)), std::invalid_argument);
}

TEST_CASE("outer horns need an equivalence on the outer edge") {
  const DgCategory c = make_complex_category({point_complex(), point_complex("Q")});
  SUBCASE("k = 0") {
    NerveSimplex s = identity_simplex(c, 0, 2);
    s.objects = {0, 1, 1};
    s.cells[mask_of({0, 1})] = c.zero(0, 1, 0);
    s.cells[mask_of({1, 2})] = c.unit(1);
    s.cells[mask_of({0, 2})] = c.zero(0, 1, 0);
    s.cells[full_mask(2)] = c.zero(0, 1, -1);
    REQUIRE(validate_simplex(c, s).empty());
    try {
      (void)fill_horn(c, extract_horn(s, 0));
      FAIL("expected CannotFillOuterHorn");
    } catch (const CannotFillOuterHorn& e) {
      CHECK(std::string(e.what()).find("0,1") != std::string::npos);
    }
  }
  SUBCASE("k = n") {
    NerveSimplex s = identity_simplex(c, 0, 2);
    s.objects = {0, 0, 1};
    s.cells[mask_of({1, 2})] = c.zero(0, 1, 0);
    s.cells[mask_of({0, 2})] = c.zero(0, 1, 0);
    s.cells[full_mask(2)] = c.zero(0, 1, -1);
    REQUIRE(validate_simplex(c, s).empty());
    try {
      (void)fill_horn(c, extract_horn(s, 2));
      FAIL("expected CannotFillOuterHorn");
    } catch (const CannotFillOuterHorn& e) {
      CHECK(std::string(e.what()).find("1,2") != std::string::npos);
    }
  }
}

TEST_CASE("vertex reversal into the opposite category") {
  for (const auto& f : fixtures()) {
    const DgCategory op = opposite(f.category);
    Rng rng(15);
    for (int n = 1; n <= 4; ++n) {
      const NerveSimplex s = sample_simplex(f.category, n, rng);
      const NerveSimplex r = reverse_simplex(s);
      CHECK(validate_simplex(op, r).empty());
      CHECK(reverse_simplex(r) == s);
      if (n >= 2) CHECK(reverse_horn(reverse_horn(extract_horn(s, n))) == extract_horn(s, n));
    }
  }
}

TEST_CASE("k = n fills are k = 0 fills in the opposite category, reversed") {
  for (const auto& f : fixtures()) {
    const DgCategory op = opposite(f.category);
    Rng rng(27);
    for (int n = 2; n <= 4; ++n) {
      const HornData h = extract_horn(sample_simplex(f.category, n, rng, {.star = true}), n);
      CHECK(fill_horn(f.category, h) == reverse_filler(fill_outer_zero(op, reverse_horn(h))));
    }
  }
}

TEST_CASE("lifting over the rationals changes nothing") {
  const DgCategory& c = fixtures().front().category;
  Rng rng(19);
  for (const auto [n, k] : kShapes) {
    const HornData h = extract_horn(sample_simplex(c, n, rng, {.star = true}), k);
    const Filler fill = fill_horn(c, h);
    const LiftResult lr = lift_filler(c, h, fill);
    CHECK(lr.filler == fill);
    CHECK(lr.correction.eps_face.is_zero());
    CHECK(lr.correction.eps_top.is_zero());
  }
}

TEST_CASE("lifting over dual numbers and rank 2") {
  for (std::size_t m : {1u, 2u})
    for (const auto& f : fixtures()) {
      if (f.category.rank() != 0) continue;
      const DgCategory b = tensor_with_ring(f.category, SquareZeroRing(m));
      const DgCategory k0 = reduce_category(b);
      Rng rng(100 + m);
      for (const auto [n, k] : kShapes) {
        const HornData h = extract_horn(sample_simplex(b, n, rng, {.star = true}), k);
        const Filler base = fill_horn(k0, reduce_mod_ideal(h));
        const LiftResult lr = lift_filler(b, h, base);
        CHECK_MESSAGE(validate_simplex(b, complete(h, lr.filler)).empty(), f.name << " n=" << n << " k=" << k);
        CHECK(reduce_mod_ideal(lr.filler) == base);
        if (k < n) {
          // The corrections solve the same system with φ, ψ in place of U, V.
          const Obstruction ob = compute_obstruction(b, h);
          const LiftCorrection& e = lr.correction;
          CHECK(b.d(e.eps_face) == e.phi);
          const Morphism& alpha = h.cells.at(mask_of({0, 1}));
          if (k == 0) CHECK(b.d(Rational(ob.sign) * e.eps_top) == b.compose(e.eps_face, alpha) + e.psi);
          else CHECK(b.d(e.eps_top) == Rational(ob.sign) * e.eps_face + e.psi);
        }
        // A different coordinate lift gives another valid filler.
        Filler guess = change_rank(base, m);
        guess.face += SquareZeroRing(m).epsilon(0) *
                      random_morphism(b, guess.face.source, guess.face.target, guess.face.degree, rng, false);
        const LiftResult lr2 = lift_filler(b, h, base, guess);
        CHECK(validate_simplex(b, complete(h, lr2.filler)).empty());
      }
    }
}

TEST_CASE("lift rejects a filler that does not solve the reduced horn") {
  const DgCategory b = tensor_with_ring(fixtures().front().category, SquareZeroRing(1));
  const DgCategory k0 = reduce_category(b);
  Rng rng(3);
  for (int k : {0, 1}) {
    const HornData h = extract_horn(sample_simplex(b, 3, rng, {.star = true}), k);
    Filler bad = fill_horn(k0, reduce_mod_ideal(h));
    bad.face += random_morphism(k0, bad.face.source, bad.face.target, bad.face.degree, rng);
    if (validate_simplex(k0, complete(reduce_mod_ideal(h), bad)).empty()) continue;
    CHECK_THROWS_AS(lift_filler(b, h, bad), InvalidReduction);
  }
}

TEST_CASE("check_gp") {
  const DgCategory& c = fixtures().front().category;
  CHECK_THROWS_AS(check_gp(c, 1, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(check_gp(c, 3, 4, 1, 1), std::invalid_argument);
  for (const auto [n, k] : kShapes) {
    const GpReport r = check_gp(c, n, k, 3, 9);
    CHECK_MESSAGE(r.ok(), "n=" << n << " k=" << k);
    CHECK(r.filled == 3);
    CHECK(r.inner_witness_calls == 0);
  }
}
