#pragma once

#include "dgnerve/mc.hpp"
#include "dgnerve/sampler.hpp"

#include <string>
#include <vector>

namespace dgn {

// Bounded complex in degrees [lo, lo + len), min_length <= len <= 3, with random differential.
Complex random_complex(Rng& rng, const std::string& label, int total_dim, int min_length = 1);

// Exterior algebra on odd generators of the given degrees, d = 0, as a one-object category.
DgCategory exterior_algebra(const std::vector<int>& generator_degrees);

// η = g∘η0∘g⁻¹ − d(g)∘g⁻¹ for g = 1 + u with u∘u = 0, starting from η0 = 0, followed over
// B by a closed ideal-valued tangent direction. Always satisfies d(η) + η∘η = 0.
Morphism random_mc_element(const DgCategory& c, ObjectId x, Rng& rng);

struct Fixture {
  std::string name;
  DgCategory category;
};

// Complex categories (total dimension at most 8), an exterior algebra and a twisted category.
std::vector<Fixture> fixture_categories(std::uint64_t seed);

}  // namespace dgn
