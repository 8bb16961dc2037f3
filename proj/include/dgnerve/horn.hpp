#pragma once

#include "dgnerve/nerve.hpp"

#include <optional>
#include <stdexcept>

namespace dgn {

struct IncompatibleHorn : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CannotFillOuterHorn : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidReduction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every cell of an n-simplex except the k-th face and the top cell.
struct HornData {
  int n = 0, k = 0;
  std::vector<ObjectId> objects;
  CellMap cells;

  Mask missing_face() const { return full_mask(n) & ~(Mask{1} << k); }
  Mask top() const { return full_mask(n); }
  bool inner() const { return 0 < k && k < n; }
  friend bool operator==(const HornData&, const HornData&) = default;
};

// Outer k = 0:   d(face) = U,  d(sign·top) = face∘α(0,1) + V,  α = α(0,1)
// Inner 0<k<n:   d(face) = U,  d(top) = sign·face + V,        sign = (−1)^τ
struct Obstruction {
  Morphism U, V;
  int sign = 1;
};

struct Filler {
  int n = 0, k = 0;
  Morphism face;  // the cell on the k-th face
  Morphism top;   // the cell on 0..n
  friend bool operator==(const Filler&, const Filler&) = default;
};

// Error terms φ, ψ of a coordinate lift and the corrections ε subtracted from it.
struct LiftCorrection {
  Morphism phi, psi, eps_face, eps_top;
};

struct LiftResult {
  Filler filler;
  LiftCorrection correction;
};

HornData extract_horn(const NerveSimplex& sigma, int k);
NerveSimplex complete(const HornData& h, const Filler& f);
HornData reduce_mod_ideal(const HornData& h);
Filler reduce_mod_ideal(const Filler& f);
Filler change_rank(const Filler& f, std::size_t rank);

// Shape problems and nonzero residuals among sequences whose cells are all present.
Report horn_compatibility(const DgCategory& c, const HornData& h, const SignPattern& signs = kPinnedPattern);

// The sign (−1)^τ in front of the face cell in the inner top equation.
int inner_face_sign(int n, int k, const SignPattern& signs = kPinnedPattern);

// Throws IncompatibleHorn (unless check is false) and std::invalid_argument for k = n.
Obstruction compute_obstruction(const DgCategory& c, const HornData& h, const SignPattern& signs = kPinnedPattern,
                                bool check = true);
// d(U) = 0 and, outer, d(V) = −U∘α(0,1); inner, sign·U + d(V) = 0.
Report check_obstruction(const DgCategory& c, const HornData& h, const Obstruction& ob);
// The defining system of the horn, evaluated on a candidate filler.
Report check_filler_system(const DgCategory& c, const HornData& h, const Obstruction& ob, const Filler& f);

Filler fill_inner(const DgCategory& c, const HornData& h, const SignPattern& signs = kPinnedPattern,
                  bool check = true);
Filler fill_outer_zero(const DgCategory& c, const HornData& h, const SignPattern& signs = kPinnedPattern);
Filler fill_outer_n(const DgCategory& c, const HornData& h);
Filler fill_horn(const DgCategory& c, const HornData& h);

// Vertex reversal i -> n − i into the opposite category, cells rescaled so that the
// structure equation is preserved. Applying it twice is the identity.
CellMap reverse_cells(const CellMap& cells, int n);
NerveSimplex reverse_simplex(const NerveSimplex& sigma);
HornData reverse_horn(const HornData& h);
Filler reverse_filler(const Filler& f);

// c is over B; filler_mod_i is a filler of the reduced horn over B/I. `coordinate_lift`
// (reducing to filler_mod_i) is the lift that gets corrected; defaults to zero ideal parts.
LiftResult lift_filler(const DgCategory& c, const HornData& h, const Filler& filler_mod_i,
                       const std::optional<Filler>& coordinate_lift = std::nullopt);

}  // namespace dgn
