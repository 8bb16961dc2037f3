#include "dgnerve/fixtures.hpp"

#include <bit>
#include <set>

namespace dgn {

Complex random_complex(Rng& rng, const std::string& label, int total_dim, int min_length) {
  if (total_dim < 1) throw std::invalid_argument("random_complex needs a positive dimension");
  if (min_length < 1 || min_length > std::min(3, total_dim)) throw std::invalid_argument("random_complex: bad length");
  const int lo = static_cast<int>(uniform_int(rng, -1, 0));
  const int len = static_cast<int>(uniform_int(rng, min_length, std::min(3, total_dim)));
  std::vector<std::size_t> dims(static_cast<std::size_t>(len), 1);
  for (int rest = total_dim - len; rest > 0; --rest) ++dims[static_cast<std::size_t>(uniform_int(rng, 0, len - 1))];

  Complex e{label, {}, {}};
  for (int i = 0; i < len; ++i) e.dims.set(lo + i, dims[static_cast<std::size_t>(i)]);
  // d^i = K·R with K a kernel basis of d^{i+1}, so d∘d = 0 by construction.
  for (int i = lo + len - 2; i >= lo; --i) {
    const std::size_t rows = e.dims.dim(i + 1), cols = e.dims.dim(i);
    std::vector<std::vector<Rational>> kernel;
    if (auto next = e.d.find(i + 1); next != e.d.end()) {
      kernel = kernel_basis(next->second);
    } else {
      for (std::size_t r = 0; r < rows; ++r) {
        std::vector<Rational> unit(rows, Rational(0));
        unit[r] = 1;
        kernel.push_back(std::move(unit));
      }
    }
    Matrix m(rows, cols, 0);
    for (const auto& k : kernel)
      for (std::size_t j = 0; j < cols; ++j) {
        const Rational r(uniform_int(rng, -1, 1));
        for (std::size_t row = 0; row < rows; ++row) m.at(row, j) += RingElement::scalar(r * k[row], 0);
      }
    if (!m.is_zero()) e.d.emplace(i, std::move(m));
  }
  return e;
}

namespace {

// E ⊕ (ℚ -> ℚ identity in degrees p, p + 1): homotopy equivalent to E.
Complex with_contractible(const Complex& e, const std::string& label, int p) {
  Complex out{label, e.dims, {}};
  const std::size_t a = e.dims.dim(p), b = e.dims.dim(p + 1);
  out.dims.set(p, a + 1);
  out.dims.set(p + 1, b + 1);
  std::set<int> degrees;
  for (const auto& [i, m] : e.d) degrees.insert(i);
  degrees.insert(p);
  for (int i : degrees) {
    const std::size_t rows = out.dims.dim(i + 1), cols = out.dims.dim(i);
    Matrix m(rows, cols, 0);
    if (auto it = e.d.find(i); it != e.d.end())
      for (std::size_t r = 0; r < it->second.rows(); ++r)
        for (std::size_t c = 0; c < it->second.cols(); ++c) m.at(r, c) = it->second.at(r, c);
    if (i == p) m.at(rows - 1, cols - 1) = RingElement::scalar(1, 0);
    out.d.emplace(i, std::move(m));
  }
  return out;
}

int reorder_sign(unsigned s, unsigned t) {
  int inversions = 0;
  for (unsigned x = s; x != 0; x &= x - 1) {
    const int i = std::countr_zero(x);
    inversions += std::popcount(t & ((1u << i) - 1));
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

DgCategory exterior_algebra(const std::vector<int>& generator_degrees) {
  const std::size_t g = generator_degrees.size();
  if (g > 8) throw std::invalid_argument("too many exterior generators");
  for (int d : generator_degrees)
    if (d % 2 == 0) throw std::invalid_argument("exterior generators must have odd degree");
  const unsigned count = 1u << g;
  std::vector<int> degree(count, 0);
  std::vector<std::size_t> index(count, 0);
  GradedModule m;
  std::map<int, std::size_t> next;
  for (unsigned s = 0; s < count; ++s) {
    for (std::size_t i = 0; i < g; ++i)
      if (s & (1u << i)) degree[s] += generator_degrees[i];
    index[s] = next[degree[s]]++;
  }
  for (const auto& [p, r] : next) m.set(p, r);

  DgCategory c(SquareZeroRing(0), {"L"});
  c.set_hom(0, 0, m);
  std::map<std::pair<int, int>, std::vector<CompEntry>> comps;
  for (unsigned left = 0; left < count; ++left)
    for (unsigned right = 0; right < count; ++right) {
      if (left & right) continue;
      // e_left · e_right, each monomial written in increasing generator order.
      const int sign = reorder_sign(left, right);
      comps[{degree[left], degree[right]}].push_back({static_cast<std::uint32_t>(index[left | right]),
                                                      static_cast<std::uint32_t>(index[left]),
                                                      static_cast<std::uint32_t>(index[right]),
                                                      RingElement::scalar(sign, 0)});
    }
  for (auto& [key, entries] : comps) c.set_composition(0, 0, 0, key.first, key.second, std::move(entries));
  Vector unit = zero_vector(m.dim(0), 0);
  unit[index[0]] = RingElement::scalar(1, 0);
  c.set_unit(0, std::move(unit));
  return c;
}

Morphism random_mc_element(const DgCategory& c, ObjectId x, Rng& rng) {
  Morphism eta = c.zero(x, x, 1);
  std::vector<Morphism> square_zero;
  for (std::size_t i = 0; i < eta.coords.size(); ++i) {
    Morphism b = c.basis(x, x, 1, i);
    if (c.d(b).is_zero() && c.compose(b, b).is_zero()) square_zero.push_back(std::move(b));
  }
  if (!square_zero.empty() && uniform_int(rng, 0, 1) == 1)
    eta = Rational(uniform_int(rng, -2, 2)) *
          square_zero[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(square_zero.size()) - 1))];

  std::vector<Morphism> nilpotent;
  for (std::size_t i = 0; i < c.dim(x, x, 0); ++i) {
    Morphism b = c.basis(x, x, 0, i);
    if (c.compose(b, b).is_zero()) nilpotent.push_back(std::move(b));
  }
  const Morphism one = c.unit(x);
  for (int round = 0; round < 2 && !nilpotent.empty(); ++round) {
    const Morphism u =
        Rational(uniform_int(rng, -2, 2)) *
        nilpotent[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(nilpotent.size()) - 1))];
    const Morphism g = one + u, g_inv = one - u;
    eta = c.compose(c.compose(g, eta), g_inv) - c.compose(c.d(g), g_inv);
  }

  if (c.rank() > 0) {
    DgCategory t = twist_unchecked(c, {MCElement{x, eta}});
    Morphism z = random_closed(t, 0, 0, 1, rng, false);
    z.source = z.target = x;
    const auto i = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(c.rank()) - 1));
    eta += c.ring().epsilon(i) * z;
  }
  return eta;
}

std::vector<Fixture> fixture_categories(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Fixture> out;

  // Three-term complexes, so that hom^2 is nonzero and the MC equation has content.
  Complex e = random_complex(rng, "E", 3, 3);
  const int p = e.dims.dims.begin()->first;
  out.push_back({"complexes-a", make_complex_category({e, with_contractible(e, "E+C", p)})});

  out.push_back({"complexes-b", make_complex_category({random_complex(rng, "F", 3, 3), random_complex(rng, "G", 3),
                                                      random_complex(rng, "H", 2)})});

  out.push_back({"exterior", exterior_algebra({-1, 1})});

  const DgCategory& base = out.front().category;
  std::vector<MCElement> objs{{0, base.zero(0, 0, 1)}, {0, random_mc_element(base, 0, rng)},
                              {1, random_mc_element(base, 1, rng)}};
  out.push_back({"twisted", twist(base, std::move(objs)).category});
  return out;
}

}  // namespace dgn
