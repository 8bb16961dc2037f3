#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgn {

using Rational = mpq_class;

struct StructuralError : std::logic_error {
  using std::logic_error::logic_error;
};

struct NotAUnit : std::domain_error {
  using std::domain_error::domain_error;
};

// p/q in lowest terms; mpq_class(p, q) alone does not reduce.
Rational ratio(long p, long q);

// "p/q" with q > 0, always with an explicit denominator.
std::string to_string(const Rational& q);
// Accepts "p", "p/q", "-p/q"; throws std::invalid_argument otherwise.
Rational parse_rational(const std::string& text);

// Element b + v of k ⊕ I where I is free of rank m with I·I = 0.
class RingElement {
 public:
  RingElement() = default;
  explicit RingElement(std::size_t rank) : ideal_(rank) {}
  RingElement(Rational body, std::vector<Rational> ideal);

  static RingElement scalar(const Rational& body, std::size_t rank);

  const Rational& body() const { return body_; }
  const std::vector<Rational>& ideal() const { return ideal_; }
  std::size_t rank() const { return ideal_.size(); }

  bool is_zero() const;
  bool in_ideal() const { return sgn(body_) == 0; }

  RingElement& operator+=(const RingElement& y);
  RingElement& operator-=(const RingElement& y);
  RingElement& operator*=(const RingElement& y);
  RingElement& operator*=(const Rational& c);

  friend RingElement operator+(RingElement x, const RingElement& y) { return x += y; }
  friend RingElement operator-(RingElement x, const RingElement& y) { return x -= y; }
  friend RingElement operator*(RingElement x, const RingElement& y) { return x *= y; }
  friend RingElement operator*(RingElement x, const Rational& c) { return x *= c; }
  friend RingElement operator*(const Rational& c, RingElement x) { return x *= c; }
  RingElement operator-() const;

  friend bool operator==(const RingElement& x, const RingElement& y);

  // *this += x·y without temporaries.
  void add_product(const RingElement& x, const RingElement& y);

 private:
  void require_same_ring(const RingElement& y) const;

  Rational body_{0};
  std::vector<Rational> ideal_;
};

class SquareZeroRing {
 public:
  explicit SquareZeroRing(std::size_t ideal_rank = 0) : rank_(ideal_rank) {}

  std::size_t ideal_rank() const { return rank_; }
  RingElement zero() const { return RingElement(rank_); }
  RingElement one() const { return RingElement::scalar(1, rank_); }
  RingElement from(const Rational& q) const { return RingElement::scalar(q, rank_); }
  // The basis element ε_i, 0-based.
  RingElement epsilon(std::size_t i) const;
  bool contains(const RingElement& x) const { return x.rank() == rank_; }

  friend bool operator==(const SquareZeroRing&, const SquareZeroRing&) = default;

 private:
  std::size_t rank_;
};

enum class ArithOp { add, sub, mul, neg };

RingElement arith(const RingElement& x, const RingElement& y, ArithOp op);
Rational reduce_mod_ideal(const RingElement& x);
RingElement invert(const RingElement& x);

// Same body, ideal part re-embedded into rank m (padding or truncating is a structural error
// unless the dropped coordinates are zero).
RingElement change_rank(const RingElement& x, std::size_t rank);

std::string to_string(const RingElement& x);

}  // namespace dgn
