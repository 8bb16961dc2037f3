#pragma once

#include "dgnerve/horn.hpp"

#include <cstdint>
#include <random>

namespace dgn {

using Rng = std::mt19937_64;

// Uniform in [lo, hi]; avoids std distributions so streams match across standard libraries.
long uniform_int(Rng& rng, long lo, long hi);
// Small integer body, and small integer ideal parts when with_ideal is set.
RingElement random_scalar(Rng& rng, std::size_t rank, bool with_ideal);

Morphism random_morphism(const DgCategory& c, ObjectId x, ObjectId y, int degree, Rng& rng, bool with_ideal = true);
// A random closed element: boundary plus cycle part.
Morphism random_closed(const DgCategory& c, ObjectId x, ObjectId y, int degree, Rng& rng, bool with_ideal = true);

struct SampleOptions {
  bool star = false;           // spine edges carry equivalence witnesses
  bool with_ideal = true;      // random coefficients may have nonzero ideal part
  int witness_attempts = 6;    // random edges tried before falling back to 1 + dξ
};

// A random simplex satisfying the structure equation: spine edges are drawn first and the
// remaining cells are inner fills of 1-horns with a random homotopy part and closed perturbation.
NerveSimplex sample_simplex(const DgCategory& c, int n, Rng& rng, const SampleOptions& options = {},
                            const SignPattern& signs = kPinnedPattern);

NerveCochain random_cochain(const DgCategory& c, const NerveSimplex& source, const NerveSimplex& target, int degree,
                            Rng& rng, bool with_ideal = true);

}  // namespace dgn
