#include "dgnerve/sweeps.hpp"

#include "dgnerve/mc.hpp"

namespace dgn {

namespace {

Rng trial_rng(std::uint64_t seed, std::uint64_t salt, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

std::string describe(const Report& r) {
  if (r.empty()) return "";
  std::string s = r.front().law + " at " + r.front().where;
  if (r.size() > 1) s += " (+" + std::to_string(r.size() - 1) + " more)";
  return s;
}

// Obstruction of a k = n horn, computed on the reversed horn in the opposite category.
Report obstruction_identities(const DgCategory& c, const HornData& h, const SignPattern& signs) {
  if (h.k < h.n) return check_obstruction(c, h, compute_obstruction(c, h, signs));
  const DgCategory op = opposite(c);
  const HornData r = reverse_horn(h);
  return check_obstruction(op, r, compute_obstruction(op, r, signs));
}

Report filler_system(const DgCategory& c, const HornData& h, const Filler& f) {
  if (h.k < h.n) return check_filler_system(c, h, compute_obstruction(c, h), f);
  const DgCategory op = opposite(c);
  const HornData r = reverse_horn(h);
  return check_filler_system(op, r, compute_obstruction(op, r), reverse_filler(f));
}

void perturb_ideal(Morphism& f, std::size_t rank, Rng& rng) {
  for (auto& e : f.coords)
    for (std::size_t i = 0; i < rank; ++i)
      e += SquareZeroRing(rank).epsilon(i) * Rational(uniform_int(rng, -2, 2));
}

}  // namespace

GpReport check_gp(const DgCategory& c, int n, int k, std::uint64_t trials, std::uint64_t seed,
                  const GpOptions& options) {
  if (n < 2) throw std::invalid_argument("check_gp needs n >= 2; the n = 1 conditions are not covered here");
  if (n > kMaxSimplexDim) throw std::invalid_argument("check_gp: n too large");
  if (k < 0 || k > n) throw std::invalid_argument("check_gp needs 0 <= k <= n");
  GpReport rep{n, k, seed, trials, 0, 0, 0, 0, {}};
  const bool inner = 0 < k && k < n;

  // Categories over B for the round-trip; a category already over B lifts against itself.
  std::vector<DgCategory> thickened;
  if (options.lift) {
    if (c.rank() == 0) {
      for (std::size_t m : options.lift_ranks)
        if (m > 0) thickened.push_back(tensor_with_ring(c, SquareZeroRing(m)));
    } else {
      thickened.push_back(c);
    }
  }

  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, 0, t);
    std::string stage = "sample";
    auto fail = [&](const std::string& msg) { rep.failures.push_back({stage, t, msg}); };
    try {
      const NerveSimplex sigma = sample_simplex(c, n, rng, {.star = !inner});
      const HornData h = extract_horn(sigma, k);

      stage = "obstruction";
      if (Report r = obstruction_identities(c, h, kPinnedPattern); !r.empty()) {
        fail(describe(r));
        continue;
      }

      stage = "fill";
      const auto calls_before = witness_solver_calls();
      const Filler f = fill_horn(c, h);
      if (inner) rep.inner_witness_calls += witness_solver_calls() - calls_before;
      if (Report r = filler_system(c, h, f); !r.empty()) {
        fail(describe(r));
        continue;
      }
      const NerveSimplex done = complete(h, f);
      if (Report r = validate_simplex(c, done); !r.empty()) {
        fail(describe(r));
        continue;
      }
      if (!inner && n == 2)
        if (Report r = validate_star(c, done); !r.empty()) {
          fail(describe(r));
          continue;
        }
      ++rep.filled;

      stage = "lift";
      bool lifted = true;
      for (const DgCategory& b : thickened) {
        const DgCategory residue = reduce_category(b);
        const HornData hb = extract_horn(sample_simplex(b, n, rng, {.star = !inner}), k);
        const HornData h0 = reduce_mod_ideal(hb);
        const Filler f0 = fill_horn(residue, h0);
        Filler guess = change_rank(f0, b.rank());
        perturb_ideal(guess.face, b.rank(), rng);
        perturb_ideal(guess.top, b.rank(), rng);
        const LiftResult lr = lift_filler(b, hb, f0, guess);
        if (Report r = validate_simplex(b, complete(hb, lr.filler)); !r.empty()) {
          fail("rank " + std::to_string(b.rank()) + ": " + describe(r));
          lifted = false;
          break;
        }
        if (!(reduce_mod_ideal(lr.filler) == f0)) {
          fail("rank " + std::to_string(b.rank()) + ": lift does not reduce to the filler");
          lifted = false;
          break;
        }
      }
      if (lifted && !thickened.empty()) ++rep.lifted;

      if (inner) {
        stage = "plain inner";
        const HornData hp = extract_horn(sample_simplex(c, n, rng, {.star = false}), k);
        const auto before = witness_solver_calls();
        const Filler fp = fill_inner(c, hp);
        rep.inner_witness_calls += witness_solver_calls() - before;
        if (Report r = validate_simplex(c, complete(hp, fp)); !r.empty()) {
          fail(describe(r));
          continue;
        }
        ++rep.plain_inner;
      }
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  return rep;
}

bool LawReport::ok() const {
  for (const auto& l : laws)
    if (l.failed != 0) return false;
  return true;
}

namespace {

struct LawRunner {
  LawReport& rep;

  template <class F>
  void run(const std::string& name, std::uint64_t salt, F&& body) {
    LawCount count{name, 0, 0, 0};
    for (std::uint64_t t = 0; t < rep.trials; ++t) {
      Rng rng = trial_rng(rep.seed, salt, t);
      std::string msg;
      try {
        msg = body(rng);
      } catch (const std::exception& e) {
        msg = e.what();
      }
      if (msg.empty()) {
        ++count.passed;
        continue;
      }
      if (count.failed++ == 0) count.first_failing_trial = t;
      if (rep.failures.size() < 20) rep.failures.push_back({name, t, msg});
    }
    rep.laws.push_back(std::move(count));
  }
};

NerveCochain sum_with_sign(NerveCochain a, const NerveCochain& b, int sign) {
  for (auto& [s, f] : a.cells) {
    if (sign > 0) f += b.cells.at(s);
    else f -= b.cells.at(s);
  }
  return a;
}

}  // namespace

LawReport run_laws(const DgCategory& c, std::uint64_t trials, std::uint64_t seed, int max_n,
                   const SignPattern& signs) {
  LawReport rep{seed, trials, {}, {}};
  if (trials == 0) return rep;
  if (max_n < 1 || max_n > kMaxSimplexDim) throw std::invalid_argument("run_laws: max_n out of range");
  LawRunner runner{rep};
  const SampleOptions plain{.star = false};

  auto degree = [](Rng& rng) { return static_cast<int>(uniform_int(rng, -1, 2)); };

  for (int n = 1; n <= max_n; ++n) {
    runner.run("d^2 = 0, n = " + std::to_string(n), 100 + n, [&](Rng& rng) -> std::string {
      const auto F = sample_simplex(c, n, rng, plain, signs);
      const auto G = sample_simplex(c, n, rng, plain, signs);
      const auto eta = random_cochain(c, F, G, degree(rng), rng);
      const auto dd = cochain_differential(c, cochain_differential(c, eta, signs), signs);
      return cochain_is_zero(dd) ? "" : "nonzero d(d(eta)) in degree " + std::to_string(eta.degree);
    });
  }
  for (int n = 1; n <= max_n; ++n) {
    runner.run("leibniz, n = " + std::to_string(n), 200 + n, [&](Rng& rng) -> std::string {
      const auto F = sample_simplex(c, n, rng, plain, signs);
      const auto G = sample_simplex(c, n, rng, plain, signs);
      const auto H = sample_simplex(c, n, rng, plain, signs);
      const auto phi = random_cochain(c, F, G, degree(rng), rng);
      const auto eta = random_cochain(c, G, H, degree(rng), rng);
      const auto lhs = cochain_differential(c, cochain_compose(c, eta, phi, signs), signs);
      const auto rhs = sum_with_sign(cochain_compose(c, cochain_differential(c, eta, signs), phi, signs),
                                     cochain_compose(c, eta, cochain_differential(c, phi, signs), signs),
                                     eta.degree % 2 == 0 ? 1 : -1);
      return cochains_equal(lhs, rhs) ? "" : "|eta| = " + std::to_string(eta.degree);
    });
  }
  runner.run("associativity", 300, [&](Rng& rng) -> std::string {
    const int n = static_cast<int>(uniform_int(rng, 1, max_n));
    const auto E = sample_simplex(c, n, rng, plain, signs);
    const auto F = sample_simplex(c, n, rng, plain, signs);
    const auto G = sample_simplex(c, n, rng, plain, signs);
    const auto H = sample_simplex(c, n, rng, plain, signs);
    const auto a = random_cochain(c, E, F, degree(rng), rng);
    const auto b = random_cochain(c, F, G, degree(rng), rng);
    const auto z = random_cochain(c, G, H, degree(rng), rng);
    const auto left = cochain_compose(c, cochain_compose(c, z, b, signs), a, signs);
    const auto right = cochain_compose(c, z, cochain_compose(c, b, a, signs), signs);
    return cochains_equal(left, right) ? "" : "n = " + std::to_string(n);
  });

  const std::vector<std::pair<int, int>> grid{{2, 0}, {3, 0}, {3, 1}, {3, 2}, {3, 3}, {4, 2}};
  std::uint64_t salt = 400;
  for (auto [n, k] : grid) {
    ++salt;
    if (n > max_n || n < 2) continue;
    if (k == n && signs != kPinnedPattern) continue;
    const bool inner = 0 < k && k < n;
    runner.run("obstruction, horn " + std::to_string(n) + "," + std::to_string(k), salt,
               [&, n = n, k = k](Rng& rng) -> std::string {
                 const auto sigma = sample_simplex(c, n, rng, {.star = !inner}, signs);
                 return describe(obstruction_identities(c, extract_horn(sigma, k), signs));
               });
  }
  return rep;
}

}  // namespace dgn
