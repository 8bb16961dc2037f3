#pragma once

#include "dgnerve/fixtures.hpp"

#include <doctest.h>

namespace test {

using namespace dgn;

inline RingElement re(long body, std::vector<long> ideal = {}) {
  std::vector<Rational> v;
  for (long x : ideal) v.push_back(Rational(x));
  return RingElement(Rational(body), std::move(v));
}

inline Matrix rational_matrix(const std::vector<std::vector<long>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = RingElement::scalar(rows[i][j], 0);
  return m;
}

// 0 -> Q --1--> Q -> 0 in degrees 0, 1.
inline Complex interval_complex(const std::string& label = "I") {
  Complex e{label, {}, {}};
  e.dims.set(0, 1);
  e.dims.set(1, 1);
  e.d.emplace(0, rational_matrix({{1}}));
  return e;
}

// Q in degree 0.
inline Complex point_complex(const std::string& label = "P") {
  Complex e{label, {}, {}};
  e.dims.set(0, 1);
  return e;
}

inline const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> f = fixture_categories(1);
  return f;
}

}  // namespace test
