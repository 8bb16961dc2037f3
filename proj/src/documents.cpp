#include "dgnerve/fixtures.hpp"
#include "dgnerve/io.hpp"

namespace dgn {

namespace {

// An object whose zero endomorphism is not an equivalence.
std::optional<ObjectId> non_contractible(const DgCategory& c) {
  for (ObjectId x = 0; x < c.object_count(); ++x)
    if (!find_equivalence_witness(c, c.zero(x, x, 0))) return x;
  return std::nullopt;
}

}  // namespace

std::vector<std::pair<std::string, Json>> fixture_documents(std::uint64_t seed) {
  std::vector<std::pair<std::string, Json>> docs;
  const auto fixtures = fixture_categories(seed);
  for (const auto& f : fixtures) docs.emplace_back("category-" + f.name, category_to_json(f.category));

  Rng rng(seed ^ 0x5eedULL);
  const DgCategory& c = fixtures.front().category;
  const NerveSimplex sigma = sample_simplex(c, 3, rng, {.star = true});
  docs.emplace_back("simplex-3", simplex_to_json(c, sigma));
  docs.emplace_back("simplex-identity-2", simplex_to_json(c, identity_simplex(c, 0, 2)));
  for (int k : {0, 1, 3}) {
    const HornData h = extract_horn(sigma, k);
    docs.emplace_back("horn-3-" + std::to_string(k), horn_to_json(c, h));
    docs.emplace_back("filler-3-" + std::to_string(k), filler_to_json(c, h, fill_horn(c, h)));
  }

  if (auto x = non_contractible(c)) {
    HornData bad{2, 0, {*x, *x, *x}, {}};
    bad.cells[mask_of({0, 1})] = c.zero(*x, *x, 0);
    bad.cells[mask_of({0, 2})] = c.unit(*x);
    docs.emplace_back("horn-zero-edge-2-0", horn_to_json(c, bad));
  }

  const Morphism eta = random_mc_element(c, 0, rng);
  docs.emplace_back("twisted", twisted_to_json(c, {{0, c.zero(0, 0, 1)}, {0, eta}}));

  const DgCategory b = tensor_with_ring(c, SquareZeroRing(1));
  const NerveSimplex sb = sample_simplex(b, 3, rng, {.star = true});
  for (int k : {0, 2}) {
    const HornData hb = extract_horn(sb, k);
    const HornData h0 = reduce_mod_ideal(hb);
    docs.emplace_back("horn-dual-3-" + std::to_string(k), horn_to_json(b, hb));
    docs.emplace_back("filler-mod-i-3-" + std::to_string(k), filler_to_json(c, h0, fill_horn(c, h0)));
  }
  return docs;
}

}  // namespace dgn
