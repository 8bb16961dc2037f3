#include "dgnerve/sampler.hpp"

#include <algorithm>

namespace dgn {

long uniform_int(Rng& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

RingElement random_scalar(Rng& rng, std::size_t rank, bool with_ideal) {
  RingElement x = RingElement::scalar(Rational(uniform_int(rng, -2, 2)), rank);
  if (with_ideal)
    for (std::size_t i = 0; i < rank; ++i) x += SquareZeroRing(rank).epsilon(i) * Rational(uniform_int(rng, -2, 2));
  return x;
}

Morphism random_morphism(const DgCategory& c, ObjectId x, ObjectId y, int degree, Rng& rng, bool with_ideal) {
  Morphism f = c.zero(x, y, degree);
  for (auto& e : f.coords) e = random_scalar(rng, c.rank(), with_ideal);
  return f;
}

Morphism random_closed(const DgCategory& c, ObjectId x, ObjectId y, int degree, Rng& rng, bool with_ideal) {
  const std::size_t rank = c.rank();
  Morphism out = c.zero(x, y, degree);
  if (out.coords.empty()) return out;
  if (c.dim(x, y, degree - 1) > 0) out += c.d(random_morphism(c, x, y, degree - 1, rng, with_ideal));

  const Matrix m = c.differential_or_zero(x, y, degree);
  const auto kernel = kernel_basis(m);
  if (kernel.empty()) return out;
  const std::size_t cols = m.cols();

  // Body part of a cycle, then an ideal correction solving body(M)·x1 = −ideal_i(M)·x0.
  std::vector<Rational> x0(cols, Rational(0));
  for (const auto& k : kernel) {
    const Rational r(uniform_int(rng, -2, 2));
    for (std::size_t j = 0; j < cols; ++j) x0[j] += r * k[j];
  }
  std::vector<std::vector<Rational>> corr(rank);
  std::vector<std::vector<Rational>> body(m.rows(), std::vector<Rational>(cols));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t j = 0; j < cols; ++j) body[r][j] = m.at(r, j).body();
  bool lifted = true;
  for (std::size_t i = 0; i < rank && lifted; ++i) {
    std::vector<Rational> rhs(m.rows(), Rational(0));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t j = 0; j < cols; ++j) rhs[r] -= m.at(r, j).ideal()[i] * x0[j];
    auto sol = solve_rational(body, rhs, cols);
    if (sol) corr[i] = std::move(*sol);
    else lifted = false;
  }
  if (lifted)
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<Rational> ideal(rank);
      for (std::size_t i = 0; i < rank; ++i) ideal[i] = corr[i][j];
      out.coords[j] += RingElement(x0[j], std::move(ideal));
    }

  // ε·(body cycle) is closed because ε kills the ideal part of d.
  if (with_ideal)
    for (std::size_t i = 0; i < rank; ++i)
      for (const auto& k : kernel) {
        const Rational r(uniform_int(rng, -1, 1));
        if (r == 0) continue;
        for (std::size_t j = 0; j < cols; ++j) {
          std::vector<Rational> ideal(rank);
          ideal[i] = r * k[j];
          out.coords[j] += RingElement(Rational(0), std::move(ideal));
        }
      }
  return out;
}

namespace {

Morphism spine_edge(const DgCategory& c, ObjectId x, ObjectId& y, Rng& rng, const SampleOptions& options) {
  const auto count = static_cast<long>(c.object_count());
  if (!options.star) {
    y = static_cast<ObjectId>(uniform_int(rng, 0, count - 1));
    return random_closed(c, x, y, 0, rng, options.with_ideal);
  }
  for (int attempt = 0; attempt < options.witness_attempts; ++attempt) {
    const auto cand = static_cast<ObjectId>(uniform_int(rng, 0, count - 1));
    Morphism f = random_closed(c, x, cand, 0, rng, options.with_ideal);
    if (find_equivalence_witness(c, f)) {
      y = cand;
      return f;
    }
  }
  y = x;
  Morphism f = c.unit(x);
  if (c.dim(x, x, -1) > 0) f += c.d(random_morphism(c, x, x, -1, rng, options.with_ideal));
  return f;
}

}  // namespace

NerveSimplex sample_simplex(const DgCategory& c, int n, Rng& rng, const SampleOptions& options,
                            const SignPattern& signs) {
  if (n < 0 || n > kMaxSimplexDim) throw std::invalid_argument("simplex dimension out of range");
  if (c.object_count() == 0) throw std::invalid_argument("cannot sample from an empty category");
  NerveSimplex sigma{n, {}, {}};
  sigma.objects.push_back(static_cast<ObjectId>(uniform_int(rng, 0, static_cast<long>(c.object_count()) - 1)));
  for (int i = 0; i < n; ++i) {
    ObjectId y = 0;
    Morphism e = spine_edge(c, sigma.objects.back(), y, rng, options);
    sigma.objects.push_back(y);
    sigma.cells[mask_of({i, i + 1})] = std::move(e);
  }

  // Each top I with i1 = i0 + 1 is the 1-horn filler over I; its missing face I \ i1 is the
  // unique non-adjacent sequence it determines. Larger i0 first so that I \ i0 is ready.
  for (int s = 2; s <= n; ++s) {
    std::vector<Mask> tops;
    for (Mask m : sequences(n)) {
      if (arrows(m) != s) continue;
      const auto v = vertices(m);
      if (v[1] == v[0] + 1) tops.push_back(m);
    }
    std::stable_sort(tops.begin(), tops.end(),
                     [](Mask a, Mask b) { return vertices(a).front() > vertices(b).front(); });
    for (Mask top : tops) {
      const auto v = vertices(top);
      HornData h{s, 1, {}, {}};
      for (int x : v) h.objects.push_back(sigma.objects[x]);
      for (Mask local : sequences(s)) {
        if (local == h.missing_face() || local == h.top()) continue;
        std::vector<int> global;
        for (int j : vertices(local)) global.push_back(v[j]);
        h.cells.emplace(local, sigma.cells.at(mask_of(global)));
      }
      // Every solution is face + d(w), top + μ·w + z with z closed; w = 0 would leave all
      // adjacent-start cells closed and their horn obstructions zero.
      Filler f = fill_inner(c, h, signs, false);
      const ObjectId x = h.objects.front(), y = h.objects.back();
      const Morphism w = random_morphism(c, x, y, 1 - s, rng, options.with_ideal);
      sigma.cells[top & ~(Mask{1} << v[1])] = f.face + c.d(w);
      sigma.cells[top] = f.top + Rational(inner_face_sign(s, 1, signs)) * w +
                         random_closed(c, x, y, 1 - s, rng, options.with_ideal);
    }
  }
  return sigma;
}

NerveCochain random_cochain(const DgCategory& c, const NerveSimplex& source, const NerveSimplex& target, int degree,
                            Rng& rng, bool with_ideal) {
  NerveCochain eta{source.n, degree, source, target, {}};
  for (Mask s : sequences(source.n)) {
    const auto v = vertices(s);
    eta.cells.emplace(s, random_morphism(c, source.objects[v.front()], target.objects[v.back()],
                                         degree - arrows(s), rng, with_ideal));
  }
  return eta;
}

}  // namespace dgn
