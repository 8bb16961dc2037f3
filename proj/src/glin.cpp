#include "dgnerve/glin.hpp"

namespace dgn {

Vector zero_vector(std::size_t size, std::size_t rank) { return Vector(size, RingElement(rank)); }

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::size_t rank)
    : rows_(rows), cols_(cols), rank_(rank), data_(rows * cols, RingElement(rank)) {}

Matrix Matrix::identity(std::size_t size, std::size_t rank) {
  Matrix m(size, size, rank);
  for (std::size_t i = 0; i < size; ++i) m.at(i, i) = RingElement::scalar(1, rank);
  return m;
}

Vector Matrix::apply(const Vector& x) const {
  if (x.size() != cols_) throw StructuralError("matrix/vector shape mismatch");
  Vector y = zero_vector(rows_, rank_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto& a = at(r, c);
      if (!a.is_zero() && !x[c].is_zero()) y[r].add_product(a, x[c]);
    }
  return y;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw StructuralError("matrix product shape mismatch");
  Matrix c(a.rows_, b.cols_, a.rank_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b.at(k, j).is_zero()) c.at(i, j).add_product(x, b.at(k, j));
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw StructuralError("matrix sum shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

std::size_t GradedModule::dim(int degree) const {
  auto it = dims.find(degree);
  return it == dims.end() ? 0 : it->second;
}

std::size_t GradedModule::total_dim() const {
  std::size_t t = 0;
  for (const auto& [d, r] : dims) t += r;
  return t;
}

void GradedModule::set(int degree, std::size_t rank) {
  if (rank == 0) dims.erase(degree);
  else dims[degree] = rank;
}

GradedMap GradedMap::identity(const GradedModule& m, std::size_t rank) {
  GradedMap id{m, m, 0, {}};
  for (const auto& [d, r] : m.dims) id.blocks[d] = Matrix::identity(r, rank);
  return id;
}

Matrix GradedMap::block(int source_degree, std::size_t rank) const {
  auto it = blocks.find(source_degree);
  if (it != blocks.end()) return it->second;
  return Matrix(target.dim(source_degree + degree), source.dim(source_degree), rank);
}

GradedMap compose_maps(const GradedMap& g, const GradedMap& f, std::size_t rank) {
  if (!(g.source == f.target)) throw StructuralError("compose_maps: target of f differs from source of g");
  GradedMap h{f.source, g.target, g.degree + f.degree, {}};
  for (const auto& [d, r] : f.source.dims) {
    Matrix fb = f.block(d, rank);
    Matrix gb = g.block(d + f.degree, rank);
    if (fb.rows() != f.target.dim(d + f.degree) || fb.cols() != r)
      throw StructuralError("compose_maps: block shape of f at degree " + std::to_string(d));
    if (gb.cols() != fb.rows()) throw StructuralError("compose_maps: block shape of g");
    Matrix hb = gb * fb;
    if (hb.rows() > 0 && hb.cols() > 0) h.blocks[d] = std::move(hb);
  }
  return h;
}

namespace {

// Gauss-Jordan on [A | b] over k: a solution with free variables zero, or nullopt.
std::optional<std::vector<Rational>> eliminate(std::vector<std::vector<Rational>> m, std::size_t cols) {
  const std::size_t rows = m.size();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j <= cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j <= cols; ++j)
        if (sgn(m[r][j]) != 0) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (sgn(m[i][cols]) != 0) return std::nullopt;
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m[i][cols];
  return x;
}

}  // namespace

std::optional<std::vector<Rational>> solve_rational(const std::vector<std::vector<Rational>>& a,
                                                    const std::vector<Rational>& b, std::size_t cols) {
  if (a.size() != b.size()) throw StructuralError("solve: row count mismatch");
  std::vector<std::vector<Rational>> m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != cols) throw StructuralError("solve: ragged matrix");
    m[i] = a[i];
    m[i].push_back(b[i]);
  }
  return eliminate(std::move(m), cols);
}

namespace {

// The body solution picked above may be the wrong one for the ideal layers; solve for
// (x_0, x_1, ..., x_m) jointly: body(A)·x_0 = b_0 and body(A)·x_l + A_l·x_0 = b_l.
std::optional<Vector> solve_block_system(const Matrix& a, const Vector& b) {
  const std::size_t rank = a.rank(), rows = a.rows(), cols = a.cols();
  const std::size_t layers = rank + 1;
  std::vector<std::vector<Rational>> m(rows * layers, std::vector<Rational>(cols * layers));
  std::vector<Rational> rhs(rows * layers);
  for (std::size_t i = 0; i < rows; ++i) {
    rhs[i] = b[i].body();
    for (std::size_t l = 0; l < rank; ++l) rhs[(l + 1) * rows + i] = b[i].ideal()[l];
    for (std::size_t j = 0; j < cols; ++j) {
      const RingElement& e = a.at(i, j);
      for (std::size_t l = 0; l < layers; ++l) m[l * rows + i][l * cols + j] = e.body();
      for (std::size_t l = 0; l < rank; ++l) m[(l + 1) * rows + i][j] = e.ideal()[l];
    }
  }
  auto sol = solve_rational(m, rhs, cols * layers);
  if (!sol) return std::nullopt;
  Vector x(cols, RingElement(rank));
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<Rational> ideal(rank);
    for (std::size_t l = 0; l < rank; ++l) ideal[l] = (*sol)[(l + 1) * cols + j];
    x[j] = RingElement((*sol)[j], std::move(ideal));
  }
  return x;
}

}  // namespace

std::optional<Vector> solve_linear(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw StructuralError("solve_linear: right-hand side has wrong length");
  const std::size_t rank = a.rank();
  for (const auto& x : b)
    if (x.rank() != rank) throw StructuralError("solve_linear: ring mismatch");

  std::vector<std::vector<Rational>> body(a.rows(), std::vector<Rational>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) body[i][j] = a.at(i, j).body();

  std::vector<Rational> rhs(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) rhs[i] = b[i].body();
  auto x0 = solve_rational(body, rhs, a.cols());
  if (!x0) return std::nullopt;

  Vector x(a.cols(), RingElement(rank));
  for (std::size_t j = 0; j < a.cols(); ++j) x[j] = RingElement::scalar((*x0)[j], rank);

  // Ideal layer l: body(A)·x_l = b_l − A_l·x_0.
  bool layered = true;
  for (std::size_t l = 0; l < rank && layered; ++l) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      Rational v = b[i].ideal()[l];
      for (std::size_t j = 0; j < a.cols(); ++j) v -= a.at(i, j).ideal()[l] * (*x0)[j];
      rhs[i] = v;
    }
    auto xl = solve_rational(body, rhs, a.cols());
    if (!xl) {
      layered = false;
      break;
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::vector<Rational> ideal = x[j].ideal();
      ideal[l] = (*xl)[j];
      x[j] = RingElement(x[j].body(), std::move(ideal));
    }
  }
  if (layered) return x;
  return solve_block_system(a, b);
}

std::vector<std::vector<Rational>> kernel_basis(const Matrix& a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = a.at(i, j).body();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace dgn
