#pragma once

#include "dgnerve/glin.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace dgn {

using ObjectId = std::size_t;

struct Violation {
  std::string law;
  std::string where;
  friend bool operator==(const Violation&, const Violation&) = default;
};
using Report = std::vector<Violation>;

struct Morphism {
  ObjectId source = 0, target = 0;
  int degree = 0;
  Vector coords;

  bool is_zero() const { return dgn::is_zero(coords); }

  Morphism& operator+=(const Morphism& other);
  Morphism& operator-=(const Morphism& other);
  Morphism& operator*=(const RingElement& c);
  Morphism& operator*=(const Rational& c);
  friend Morphism operator+(Morphism a, const Morphism& b) { return a += b; }
  friend Morphism operator-(Morphism a, const Morphism& b) { return a -= b; }
  friend Morphism operator*(const Rational& c, Morphism a) { return a *= c; }
  friend Morphism operator*(const RingElement& c, Morphism a) { return a *= c; }
  Morphism operator-() const;

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

// out = Σ coef · left ⊗ right, where left ∈ hom(Y,Z) and right ∈ hom(X,Y).
struct CompEntry {
  std::uint32_t out = 0, left = 0, right = 0;
  RingElement coef;
  friend bool operator==(const CompEntry&, const CompEntry&) = default;
};

class DgCategory {
 public:
  using HomKey = std::tuple<ObjectId, ObjectId, int>;
  using CompKey = std::tuple<ObjectId, ObjectId, ObjectId, int, int>;  // x, y, z, |g|, |f|

  DgCategory() = default;
  DgCategory(SquareZeroRing ring, std::vector<std::string> labels);

  const SquareZeroRing& ring() const { return ring_; }
  std::size_t rank() const { return ring_.ideal_rank(); }
  std::size_t object_count() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(ObjectId x) const { return labels_.at(x); }
  std::optional<ObjectId> find(const std::string& label) const;

  const GradedModule& hom(ObjectId x, ObjectId y) const { return homs_.at(x * labels_.size() + y); }
  std::size_t dim(ObjectId x, ObjectId y, int degree) const { return hom(x, y).dim(degree); }
  void set_hom(ObjectId x, ObjectId y, GradedModule m);

  // d : hom^p(x,y) -> hom^{p+1}(x,y); absent blocks are zero.
  const Matrix* differential(ObjectId x, ObjectId y, int p) const;
  Matrix differential_or_zero(ObjectId x, ObjectId y, int p) const;
  void set_differential(ObjectId x, ObjectId y, int p, Matrix m);
  const std::map<HomKey, Matrix>& differentials() const { return diffs_; }

  // hom^q(y,z) ⊗ hom^p(x,y) -> hom^{p+q}(x,z)
  const std::vector<CompEntry>* composition(ObjectId x, ObjectId y, ObjectId z, int q, int p) const;
  void set_composition(ObjectId x, ObjectId y, ObjectId z, int q, int p, std::vector<CompEntry> entries);
  const std::map<CompKey, std::vector<CompEntry>>& compositions() const { return comps_; }

  const Vector& unit_coords(ObjectId x) const { return units_.at(x); }
  void set_unit(ObjectId x, Vector coords);

  Morphism zero(ObjectId x, ObjectId y, int degree) const;
  Morphism unit(ObjectId x) const;
  Morphism basis(ObjectId x, ObjectId y, int degree, std::size_t i) const;
  Morphism make(ObjectId x, ObjectId y, int degree, Vector coords) const;

  Morphism d(const Morphism& f) const;
  // g∘f
  Morphism compose(const Morphism& g, const Morphism& f) const;

  // Lowest and highest degree carrying a nonzero hom space (0, -1 when empty).
  std::pair<int, int> degree_range() const;

  friend bool operator==(const DgCategory&, const DgCategory&) = default;

 private:
  void require_object(ObjectId x) const;

  SquareZeroRing ring_;
  std::vector<std::string> labels_;
  std::vector<GradedModule> homs_;
  std::map<HomKey, Matrix> diffs_;
  std::map<CompKey, std::vector<CompEntry>> comps_;
  std::vector<Vector> units_;
};

// Violations of d² = 0, Leibniz, associativity and unit laws, checked on basis elements.
Report check_axioms(const DgCategory& c);
// Only d² = 0; cheaper, used by mutation tests.
Report check_differential_squares(const DgCategory& c);

struct InvalidComplex : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A bounded cochain complex of finite rational vector spaces. d.at(i) : E^i -> E^{i+1}.
struct Complex {
  std::string label;
  GradedModule dims;
  std::map<int, Matrix> d;
};

DgCategory make_complex_category(const std::vector<Complex>& complexes);

// The degree-p morphism complexes[x] -> complexes[y] given by blocks[i] : E^i -> F^{i+p}
// (absent blocks are zero), in the basis used by make_complex_category.
Morphism complex_map(const std::vector<Complex>& complexes, ObjectId x, ObjectId y, int p,
                     const std::map<int, Matrix>& blocks);

DgCategory opposite(const DgCategory& c);

struct EquivalenceWitness {
  Morphism a, g, h;
};

struct NotEquivalence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Witness (a, g, h) with d(a) = 0, a∘α = 1 + d(g), α∘a = 1 + d(h); nullopt when none exists.
// Throws std::invalid_argument when α is not a closed degree-0 morphism.
std::optional<EquivalenceWitness> find_equivalence_witness(const DgCategory& c, const Morphism& alpha);
bool verify_witness(const DgCategory& c, const Morphism& alpha, const EquivalenceWitness& w);

// Instrumentation: number of witness searches since the last reset.
std::uint64_t witness_solver_calls();
void reset_witness_solver_calls();

std::string location(const DgCategory& c, ObjectId x, ObjectId y, int degree);

}  // namespace dgn
