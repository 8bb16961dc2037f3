#pragma once

#include "dgnerve/dgcat.hpp"

namespace dgn {

struct MCElement {
  ObjectId object = 0;
  Morphism eta;
};

struct InvalidMCObject : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Base change k -> B: same bases, structure constants coerced into B.
DgCategory tensor_with_ring(const DgCategory& p, const SquareZeroRing& ring);
// Base change B -> B/I = k.
DgCategory reduce_category(const DgCategory& c);

Morphism change_rank(const Morphism& f, std::size_t rank);
// Coordinatewise reduction mod I, landing over k.
Morphism reduce_mod_ideal(const Morphism& f);

// d(η) + η∘η
Morphism mc_curvature(const DgCategory& c, const Morphism& eta);
// Throws std::invalid_argument unless η is a degree-1 endomorphism.
bool check_mc(const DgCategory& c, const Morphism& eta);

struct TwistedDgCategory {
  DgCategory base;
  std::vector<MCElement> mc_objects;
  DgCategory category;  // object i is (mc_objects[i].object, mc_objects[i].eta)
};

// hom((E,η),(F,ζ)) = hom(E,F) with d(f) + ζ∘f − (−1)^{|f|} f∘η. Throws InvalidMCObject.
TwistedDgCategory twist(const DgCategory& base, std::vector<MCElement> mc_objects);
// No MC validation; for mutation tests that need the broken category.
DgCategory twist_unchecked(const DgCategory& base, const std::vector<MCElement>& mc_objects);

}  // namespace dgn
