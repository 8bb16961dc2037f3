#include "dgnerve/rings.hpp"

#include <algorithm>

namespace dgn {

Rational ratio(long p, long q) {
  if (q == 0) throw std::invalid_argument("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  const auto slash = text.find('/');
  auto valid_int = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t start = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) start = 1;
    if (start == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw std::invalid_argument("malformed rational '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

RingElement::RingElement(Rational body, std::vector<Rational> ideal)
    : body_(std::move(body)), ideal_(std::move(ideal)) {
  body_.canonicalize();
  for (auto& v : ideal_) v.canonicalize();
}

RingElement RingElement::scalar(const Rational& body, std::size_t rank) {
  RingElement x(rank);
  x.body_ = body;
  return x;
}

bool RingElement::is_zero() const {
  return sgn(body_) == 0 && std::all_of(ideal_.begin(), ideal_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

void RingElement::require_same_ring(const RingElement& y) const {
  if (ideal_.size() != y.ideal_.size())
    throw StructuralError("ring mismatch: ideal ranks " + std::to_string(ideal_.size()) + " and " +
                          std::to_string(y.ideal_.size()));
}

RingElement& RingElement::operator+=(const RingElement& y) {
  require_same_ring(y);
  body_ += y.body_;
  for (std::size_t i = 0; i < ideal_.size(); ++i) ideal_[i] += y.ideal_[i];
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& y) {
  require_same_ring(y);
  body_ -= y.body_;
  for (std::size_t i = 0; i < ideal_.size(); ++i) ideal_[i] -= y.ideal_[i];
  return *this;
}

RingElement& RingElement::operator*=(const RingElement& y) {
  require_same_ring(y);
  for (std::size_t i = 0; i < ideal_.size(); ++i) ideal_[i] = body_ * y.ideal_[i] + y.body_ * ideal_[i];
  body_ *= y.body_;
  return *this;
}

RingElement& RingElement::operator*=(const Rational& c) {
  body_ *= c;
  for (auto& v : ideal_) v *= c;
  return *this;
}

RingElement RingElement::operator-() const {
  RingElement r(*this);
  r.body_ = -r.body_;
  for (auto& v : r.ideal_) v = -v;
  return r;
}

bool operator==(const RingElement& x, const RingElement& y) {
  return x.body_ == y.body_ && x.ideal_ == y.ideal_;
}

void RingElement::add_product(const RingElement& x, const RingElement& y) {
  require_same_ring(x);
  require_same_ring(y);
  const bool xb = sgn(x.body_) != 0, yb = sgn(y.body_) != 0;
  if (xb && yb) body_ += x.body_ * y.body_;
  for (std::size_t i = 0; i < ideal_.size(); ++i) {
    if (xb && sgn(y.ideal_[i]) != 0) ideal_[i] += x.body_ * y.ideal_[i];
    if (yb && sgn(x.ideal_[i]) != 0) ideal_[i] += y.body_ * x.ideal_[i];
  }
}

RingElement SquareZeroRing::epsilon(std::size_t i) const {
  if (i >= rank_) throw StructuralError("epsilon index out of range");
  std::vector<Rational> ideal(rank_);
  ideal[i] = 1;
  return RingElement(0, std::move(ideal));
}

RingElement arith(const RingElement& x, const RingElement& y, ArithOp op) {
  switch (op) {
    case ArithOp::add: return x + y;
    case ArithOp::sub: return x - y;
    case ArithOp::mul: return x * y;
    case ArithOp::neg: return -x;
  }
  throw StructuralError("unknown ring operation");
}

Rational reduce_mod_ideal(const RingElement& x) { return x.body(); }

RingElement invert(const RingElement& x) {
  if (sgn(x.body()) == 0) throw NotAUnit("element " + to_string(x) + " lies in the maximal ideal");
  Rational inv = 1 / x.body();
  Rational inv2 = inv * inv;
  std::vector<Rational> ideal(x.rank());
  for (std::size_t i = 0; i < x.rank(); ++i) ideal[i] = -inv2 * x.ideal()[i];
  return RingElement(inv, std::move(ideal));
}

RingElement change_rank(const RingElement& x, std::size_t rank) {
  std::vector<Rational> ideal(rank);
  for (std::size_t i = 0; i < x.rank(); ++i) {
    if (i < rank) ideal[i] = x.ideal()[i];
    else if (sgn(x.ideal()[i]) != 0) throw StructuralError("cannot drop a nonzero ideal coordinate");
  }
  return RingElement(x.body(), std::move(ideal));
}

std::string to_string(const RingElement& x) {
  std::string s = to_string(x.body());
  for (std::size_t i = 0; i < x.rank(); ++i) {
    if (sgn(x.ideal()[i]) == 0) continue;
    s += " + (" + to_string(x.ideal()[i]) + ")e" + std::to_string(i + 1);
  }
  return s;
}

}  // namespace dgn
