#pragma once

#include "dgnerve/dgcat.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dgn {

// A strictly increasing vertex sequence i0 < ... < im, stored as a bit set.
using Mask = std::uint32_t;
using CellMap = std::map<Mask, Morphism>;

constexpr int kMaxSimplexDim = 12;

int popcount(Mask s);
// Number of arrows m = |s| − 1.
inline int arrows(Mask s) { return popcount(s) - 1; }
std::vector<int> vertices(Mask s);
Mask mask_of(const std::vector<int>& vertices);
inline Mask full_mask(int n) { return (Mask{1} << (n + 1)) - 1; }
// Sub-sequence i_j < ... < i_m (from) and i_0 < ... < i_j (upto).
Mask from_position(Mask s, int j);
Mask upto_position(Mask s, int j);
Mask drop_position(Mask s, int j);
// "0,1,3"
std::string seq_key(Mask s);
Mask parse_seq_key(const std::string& key);
// All sequences in {0..n} with at least two vertices, ordered by length then lexicographically.
std::vector<Mask> sequences(int n);

// Signs in the structure equation of a simplex,
//   d α(I) = Σ_{0<j<m} c(j,m) α(i_j..i_m)∘α(i_0..i_j) + Σ_{0<j<m} f(j,m) α(I \ i_j),
// and their extension to cochains of arbitrary degree.
// c(j,m) = (−1)^{e_c + 1 + comp_flip}, f(j,m) = (−1)^{e_f + face_flip}, e = m−j or j.
struct SignPattern {
  bool comp_from_end = true;
  bool comp_flip = false;
  bool face_from_end = true;
  bool face_flip = false;

  int composition_sign(int j, int m) const;
  int face_sign(int j, int m) const;
  // Face term of the untwisted cochain differential on a degree-p cochain.
  int cochain_face_sign(int j, int m, int degree) const;
  // Sign of left(I≥j)∘right(I≤j) in the cochain product, right of degree `right_degree`.
  int cochain_comp_sign(int j, int m, int right_degree) const;

  int code() const;
  static SignPattern from_code(int code);
  std::string describe() const;

  friend bool operator==(const SignPattern&, const SignPattern&) = default;
};

inline constexpr SignPattern kPinnedPattern{};
std::vector<SignPattern> all_sign_patterns();

// Condition (ii) at m = 2 reads d α012 = α12∘α01 − α02.
bool reproduces_two_simplex_form(const SignPattern& s);
// Formal check in the free graded category on cells α(I) of degree 1 − m: substituting the
// structure equation into d(RHS(I)) gives zero for every I with |I| ≤ max_vertices.
bool structure_equation_consistent(const SignPattern& s, int max_vertices);

struct NerveSimplex {
  int n = 0;
  std::vector<ObjectId> objects;  // X_0 .. X_n
  CellMap cells;                  // every sequence with ≥ 2 vertices

  const Morphism& cell(Mask s) const;
  friend bool operator==(const NerveSimplex&, const NerveSimplex&) = default;
};

inline int cell_degree(Mask s) { return 1 - arrows(s); }

// Right-hand side of the structure equation at s; absent cells count as zero.
Morphism structure_rhs(const DgCategory& c, const std::vector<ObjectId>& objects, const CellMap& cells, Mask s,
                       const SignPattern& signs = kPinnedPattern);
// d α(s) − RHS(s).
Morphism simplex_residual(const DgCategory& c, const NerveSimplex& sigma, Mask s,
                          const SignPattern& signs = kPinnedPattern);
// Shape problems and every sequence with nonzero residual.
Report validate_simplex(const DgCategory& c, const NerveSimplex& sigma, const SignPattern& signs = kPinnedPattern);
// Edges α(i0,i1) without an equivalence witness.
Report validate_star(const DgCategory& c, const NerveSimplex& sigma);

// All edges 1_X, higher cells zero.
NerveSimplex identity_simplex(const DgCategory& c, ObjectId x, int n);

NerveSimplex face(const NerveSimplex& sigma, int j);
NerveSimplex degeneracy(const DgCategory& c, const NerveSimplex& sigma, int j);

// Morphism F -> G of weak functors I_n -> A. Cell I lives in hom^{degree − m}(F(i0), G(im)).
struct NerveCochain {
  int n = 0;
  int degree = 0;
  NerveSimplex source, target;
  CellMap cells;

  const Morphism& cell(Mask s) const;
};

inline int cochain_cell_degree(int degree, Mask s) { return degree - arrows(s); }

NerveCochain zero_cochain(const DgCategory& c, const NerveSimplex& f, const NerveSimplex& g, int degree);

// D(η)(I) = d(η(I)) + Σ face terms; the F and G boundary terms are left out.
NerveCochain untwisted_differential(const DgCategory& c, const NerveCochain& eta,
                                    const SignPattern& signs = kPinnedPattern);
// (η⋆φ)(I) = Σ_{0<j<m} ± η(I≥j)∘φ(I≤j), for φ : F -> G and η : G -> H.
NerveCochain cochain_compose(const DgCategory& c, const NerveCochain& eta, const NerveCochain& phi,
                             const SignPattern& signs = kPinnedPattern);
// D(η) + G⋆η − (−1)^{|η|} η⋆F.
NerveCochain cochain_differential(const DgCategory& c, const NerveCochain& eta,
                                  const SignPattern& signs = kPinnedPattern);
// The simplex viewed as a degree-1 cochain from itself to itself.
NerveCochain as_cochain(const NerveSimplex& sigma);

bool cochain_is_zero(const NerveCochain& eta);
bool cochains_equal(const NerveCochain& a, const NerveCochain& b);

}  // namespace dgn
