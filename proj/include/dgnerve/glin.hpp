#pragma once

#include "dgnerve/rings.hpp"

#include <map>
#include <optional>
#include <vector>

namespace dgn {

using Vector = std::vector<RingElement>;

Vector zero_vector(std::size_t size, std::size_t rank);
bool is_zero(const Vector& v);

// Dense row-major matrix over a square-zero ring.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, std::size_t rank);

  static Matrix identity(std::size_t size, std::size_t rank);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rank_; }

  RingElement& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const RingElement& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector apply(const Vector& x) const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0, rank_ = 0;
  std::vector<RingElement> data_;
};

struct GradedModule {
  std::map<int, std::size_t> dims;  // zero ranks are never stored

  std::size_t dim(int degree) const;
  std::size_t total_dim() const;
  void set(int degree, std::size_t rank);

  friend bool operator==(const GradedModule&, const GradedModule&) = default;
};

// Block d of `blocks` maps source degree d to target degree d + degree.
struct GradedMap {
  GradedModule source, target;
  int degree = 0;
  std::map<int, Matrix> blocks;

  static GradedMap identity(const GradedModule& m, std::size_t rank);
  // Missing blocks are zero; this returns a correctly shaped zero block.
  Matrix block(int source_degree, std::size_t rank) const;
};

GradedMap compose_maps(const GradedMap& g, const GradedMap& f, std::size_t rank);

// Some x with A·x = b, or nullopt. Free variables are set to zero.
std::optional<Vector> solve_linear(const Matrix& a, const Vector& b);

// Same contract over the rationals alone.
std::optional<std::vector<Rational>> solve_rational(const std::vector<std::vector<Rational>>& a,
                                                    const std::vector<Rational>& b, std::size_t cols);

// Basis of {x : body(A)·x = 0} over k.
std::vector<std::vector<Rational>> kernel_basis(const Matrix& a);

}  // namespace dgn
