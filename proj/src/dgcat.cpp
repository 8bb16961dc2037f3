#include "dgnerve/dgcat.hpp"

#include <atomic>
#include <stdexcept>

namespace dgn {

namespace {

std::atomic<std::uint64_t> g_witness_calls{0};

void require_compatible(const Morphism& a, const Morphism& b) {
  if (a.source != b.source || a.target != b.target || a.degree != b.degree || a.coords.size() != b.coords.size())
    throw StructuralError("morphisms live in different hom spaces");
}

}  // namespace

Morphism& Morphism::operator+=(const Morphism& other) {
  require_compatible(*this, other);
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += other.coords[i];
  return *this;
}

Morphism& Morphism::operator-=(const Morphism& other) {
  require_compatible(*this, other);
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= other.coords[i];
  return *this;
}

Morphism& Morphism::operator*=(const RingElement& c) {
  for (auto& x : coords) x *= c;
  return *this;
}

Morphism& Morphism::operator*=(const Rational& c) {
  for (auto& x : coords) x *= c;
  return *this;
}

Morphism Morphism::operator-() const {
  Morphism r(*this);
  for (auto& x : r.coords) x = -x;
  return r;
}

DgCategory::DgCategory(SquareZeroRing ring, std::vector<std::string> labels)
    : ring_(ring), labels_(std::move(labels)), homs_(labels_.size() * labels_.size()), units_(labels_.size()) {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    for (std::size_t j = i + 1; j < labels_.size(); ++j)
      if (labels_[i] == labels_[j]) throw StructuralError("duplicate object label '" + labels_[i] + "'");
}

std::optional<ObjectId> DgCategory::find(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

void DgCategory::require_object(ObjectId x) const {
  if (x >= labels_.size()) throw StructuralError("object index out of range");
}

void DgCategory::set_hom(ObjectId x, ObjectId y, GradedModule m) {
  require_object(x);
  require_object(y);
  homs_[x * labels_.size() + y] = std::move(m);
}

const Matrix* DgCategory::differential(ObjectId x, ObjectId y, int p) const {
  auto it = diffs_.find({x, y, p});
  return it == diffs_.end() ? nullptr : &it->second;
}

Matrix DgCategory::differential_or_zero(ObjectId x, ObjectId y, int p) const {
  if (const Matrix* m = differential(x, y, p)) return *m;
  return Matrix(dim(x, y, p + 1), dim(x, y, p), rank());
}

void DgCategory::set_differential(ObjectId x, ObjectId y, int p, Matrix m) {
  require_object(x);
  require_object(y);
  if (m.is_zero()) diffs_.erase({x, y, p});
  else diffs_[{x, y, p}] = std::move(m);
}

const std::vector<CompEntry>* DgCategory::composition(ObjectId x, ObjectId y, ObjectId z, int q, int p) const {
  auto it = comps_.find({x, y, z, q, p});
  return it == comps_.end() ? nullptr : &it->second;
}

void DgCategory::set_composition(ObjectId x, ObjectId y, ObjectId z, int q, int p, std::vector<CompEntry> entries) {
  require_object(x);
  require_object(y);
  require_object(z);
  std::erase_if(entries, [](const CompEntry& e) { return e.coef.is_zero(); });
  if (entries.empty()) comps_.erase({x, y, z, q, p});
  else comps_[{x, y, z, q, p}] = std::move(entries);
}

void DgCategory::set_unit(ObjectId x, Vector coords) {
  require_object(x);
  units_[x] = std::move(coords);
}

Morphism DgCategory::zero(ObjectId x, ObjectId y, int degree) const {
  return Morphism{x, y, degree, zero_vector(dim(x, y, degree), rank())};
}

Morphism DgCategory::unit(ObjectId x) const { return Morphism{x, x, 0, units_.at(x)}; }

Morphism DgCategory::basis(ObjectId x, ObjectId y, int degree, std::size_t i) const {
  Morphism m = zero(x, y, degree);
  m.coords.at(i) = ring_.one();
  return m;
}

Morphism DgCategory::make(ObjectId x, ObjectId y, int degree, Vector coords) const {
  if (coords.size() != dim(x, y, degree))
    throw StructuralError("coordinate vector has wrong length for " + location(*this, x, y, degree));
  return Morphism{x, y, degree, std::move(coords)};
}

Morphism DgCategory::d(const Morphism& f) const {
  Morphism out = zero(f.source, f.target, f.degree + 1);
  if (const Matrix* m = differential(f.source, f.target, f.degree)) out.coords = m->apply(f.coords);
  return out;
}

Morphism DgCategory::compose(const Morphism& g, const Morphism& f) const {
  if (f.target != g.source) throw StructuralError("compose: endpoints do not match");
  Morphism out = zero(f.source, g.target, f.degree + g.degree);
  const auto* entries = composition(f.source, f.target, g.target, g.degree, f.degree);
  if (!entries) return out;
  for (const auto& e : *entries) {
    const auto& gl = g.coords[e.left];
    const auto& fr = f.coords[e.right];
    if (gl.is_zero() || fr.is_zero()) continue;
    out.coords[e.out].add_product(e.coef, gl * fr);
  }
  return out;
}

std::pair<int, int> DgCategory::degree_range() const {
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& h : homs_)
    for (const auto& [d, r] : h.dims) {
      if (!any || d < lo) lo = d;
      if (!any || d > hi) hi = d;
      any = true;
    }
  return {lo, hi};
}

std::string location(const DgCategory& c, ObjectId x, ObjectId y, int degree) {
  return "(" + c.label(x) + "," + c.label(y) + "," + std::to_string(degree) + ")";
}

namespace {

void check_structure(const DgCategory& c, Report& report) {
  const std::size_t n = c.object_count(), rank = c.rank();
  for (const auto& [key, m] : c.differentials()) {
    auto [x, y, p] = key;
    if (m.rows() != c.dim(x, y, p + 1) || m.cols() != c.dim(x, y, p) || m.rank() != rank)
      report.push_back({"shape", "differential " + location(c, x, y, p)});
  }
  for (const auto& [key, entries] : c.compositions()) {
    auto [x, y, z, q, p] = key;
    for (const auto& e : entries)
      if (e.out >= c.dim(x, z, p + q) || e.left >= c.dim(y, z, q) || e.right >= c.dim(x, y, p) ||
          e.coef.rank() != rank) {
        report.push_back({"shape", "composition " + c.label(x) + "," + c.label(y) + "," + c.label(z) +
                                       " degrees " + std::to_string(q) + "," + std::to_string(p)});
        break;
      }
  }
  for (ObjectId x = 0; x < n; ++x)
    if (c.unit_coords(x).size() != c.dim(x, x, 0)) report.push_back({"shape", "unit of " + c.label(x)});
}

}  // namespace

Report check_differential_squares(const DgCategory& c) {
  Report report;
  for (ObjectId x = 0; x < c.object_count(); ++x)
    for (ObjectId y = 0; y < c.object_count(); ++y)
      for (const auto& [p, r] : c.hom(x, y).dims) {
        const Matrix* d0 = c.differential(x, y, p);
        const Matrix* d1 = c.differential(x, y, p + 1);
        if (!d0 || !d1) continue;
        if (!((*d1) * (*d0)).is_zero()) report.push_back({"d^2", location(c, x, y, p)});
      }
  return report;
}

Report check_axioms(const DgCategory& c) {
  Report report;
  check_structure(c, report);
  if (!report.empty()) return report;

  const std::size_t n = c.object_count();
  auto squares = check_differential_squares(c);
  report.insert(report.end(), squares.begin(), squares.end());

  // Basis elements and their differentials, cached per hom block.
  std::map<DgCategory::HomKey, std::vector<Morphism>> basis, dbasis;
  for (ObjectId x = 0; x < n; ++x)
    for (ObjectId y = 0; y < n; ++y)
      for (const auto& [p, r] : c.hom(x, y).dims)
        for (std::size_t i = 0; i < r; ++i) {
          basis[{x, y, p}].push_back(c.basis(x, y, p, i));
          dbasis[{x, y, p}].push_back(c.d(basis[{x, y, p}].back()));
        }

  for (ObjectId x = 0; x < n; ++x) {
    Morphism one = c.unit(x);
    if (!c.d(one).is_zero()) report.push_back({"unit closed", c.label(x)});
  }

  for (ObjectId x = 0; x < n; ++x)
    for (ObjectId y = 0; y < n; ++y)
      for (ObjectId z = 0; z < n; ++z)
        for (const auto& [q, rq] : c.hom(y, z).dims)
          for (const auto& [p, rp] : c.hom(x, y).dims) {
            const auto& gs = basis[{y, z, q}];
            const auto& dgs = dbasis[{y, z, q}];
            const auto& fs = basis[{x, y, p}];
            const auto& dfs = dbasis[{x, y, p}];
            bool bad = false;
            for (std::size_t i = 0; i < rq && !bad; ++i)
              for (std::size_t j = 0; j < rp && !bad; ++j) {
                Morphism lhs = c.d(c.compose(gs[i], fs[j]));
                Morphism rhs = c.compose(dgs[i], fs[j]);
                Morphism tail = c.compose(gs[i], dfs[j]);
                if (q % 2 == 0) rhs += tail;
                else rhs -= tail;
                if (!(lhs == rhs)) {
                  report.push_back({"leibniz", c.label(x) + "->" + c.label(y) + "->" + c.label(z) + " degrees " +
                                                   std::to_string(q) + "," + std::to_string(p) + " basis " +
                                                   std::to_string(i) + "," + std::to_string(j)});
                  bad = true;
                }
              }
          }

  for (ObjectId x = 0; x < n; ++x)
    for (ObjectId y = 0; y < n; ++y) {
      for (const auto& [p, r] : c.hom(x, y).dims)
        for (const auto& f : basis[{x, y, p}]) {
          if (!(c.compose(c.unit(y), f) == f)) {
            report.push_back({"left unit", location(c, x, y, p)});
            break;
          }
          if (!(c.compose(f, c.unit(x)) == f)) {
            report.push_back({"right unit", location(c, x, y, p)});
            break;
          }
        }
    }

  for (ObjectId w = 0; w < n; ++w)
    for (ObjectId x = 0; x < n; ++x)
      for (ObjectId y = 0; y < n; ++y)
        for (ObjectId z = 0; z < n; ++z)
          for (const auto& [r_deg, rr] : c.hom(y, z).dims)
            for (const auto& [q, rq] : c.hom(x, y).dims)
              for (const auto& [p, rp] : c.hom(w, x).dims) {
                const auto& hs = basis[{y, z, r_deg}];
                const auto& gs = basis[{x, y, q}];
                const auto& fs = basis[{w, x, p}];
                bool bad = false;
                for (std::size_t j = 0; j < rq && !bad; ++j)
                  for (std::size_t k = 0; k < rp && !bad; ++k) {
                    Morphism gf = c.compose(gs[j], fs[k]);
                    for (std::size_t i = 0; i < rr && !bad; ++i) {
                      if (!(c.compose(c.compose(hs[i], gs[j]), fs[k]) == c.compose(hs[i], gf))) {
                        report.push_back({"associativity", c.label(w) + "->" + c.label(x) + "->" + c.label(y) +
                                                               "->" + c.label(z) + " degrees " + std::to_string(r_deg) +
                                                               "," + std::to_string(q) + "," + std::to_string(p)});
                        bad = true;
                      }
                    }
                  }
              }
  return report;
}

namespace {

struct HomLayout {
  // (source degree i, offset, rows = dim F^{i+p}, cols = dim E^i)
  struct Block {
    int i;
    std::size_t offset, rows, cols;
  };
  std::map<int, std::vector<Block>> blocks;  // by hom degree p
  std::map<int, std::size_t> dims;

  const Block* find(int p, int i) const {
    auto it = blocks.find(p);
    if (it == blocks.end()) return nullptr;
    for (const auto& b : it->second)
      if (b.i == i) return &b;
    return nullptr;
  }
};

HomLayout layout(const Complex& e, const Complex& f) {
  HomLayout l;
  for (const auto& [i, ci] : e.dims.dims)
    for (const auto& [j, rj] : f.dims.dims) {
      const int p = j - i;
      auto& off = l.dims[p];
      l.blocks[p].push_back({i, off, rj, ci});
      off += rj * ci;
    }
  return l;
}

}  // namespace

Morphism complex_map(const std::vector<Complex>& complexes, ObjectId x, ObjectId y, int p,
                     const std::map<int, Matrix>& blocks) {
  const HomLayout l = layout(complexes.at(x), complexes.at(y));
  auto it = l.dims.find(p);
  Morphism f{x, y, p, zero_vector(it == l.dims.end() ? 0 : it->second, 0)};
  for (const auto& [i, m] : blocks) {
    const auto* b = l.find(p, i);
    if (!b) {
      if (!m.is_zero()) throw std::invalid_argument("complex_map: block outside the hom space");
      continue;
    }
    if (m.rows() != b->rows || m.cols() != b->cols) throw std::invalid_argument("complex_map: block shape");
    for (std::size_t r = 0; r < b->rows; ++r)
      for (std::size_t c = 0; c < b->cols; ++c) f.coords[b->offset + r * b->cols + c] = m.at(r, c);
  }
  return f;
}

DgCategory make_complex_category(const std::vector<Complex>& complexes) {
  const std::size_t n = complexes.size();
  for (const auto& e : complexes) {
    for (const auto& [i, m] : e.d) {
      if (m.rows() != e.dims.dim(i + 1) || m.cols() != e.dims.dim(i) || m.rank() != 0)
        throw InvalidComplex("complex " + e.label + ": differential block at degree " + std::to_string(i) +
                             " has the wrong shape");
      auto next = e.d.find(i + 1);
      if (next != e.d.end() && !(next->second * m).is_zero())
        throw InvalidComplex("complex " + e.label + ": d∘d is nonzero at degree " + std::to_string(i));
    }
  }
  std::vector<std::string> labels;
  for (const auto& e : complexes) labels.push_back(e.label);
  DgCategory c(SquareZeroRing(0), labels);

  std::vector<std::vector<HomLayout>> lay(n, std::vector<HomLayout>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      lay[x][y] = layout(complexes[x], complexes[y]);
      GradedModule m;
      for (const auto& [p, r] : lay[x][y].dims) m.set(p, r);
      c.set_hom(x, y, m);
    }

  auto dmat = [&](const Complex& e, int i) -> const Matrix* {
    auto it = e.d.find(i);
    return it == e.d.end() ? nullptr : &it->second;
  };

  // d(f) = d_F∘f − (−1)^p f∘d_E on elementary matrices.
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& E = complexes[x];
      const auto& F = complexes[y];
      const auto& L = lay[x][y];
      for (const auto& [p, blocks] : L.blocks) {
        Matrix m(L.dims.count(p + 1) ? L.dims.at(p + 1) : 0, L.dims.at(p), 0);
        if (m.rows() == 0) continue;
        for (const auto& b : blocks)
          for (std::size_t r = 0; r < b.rows; ++r)
            for (std::size_t col = 0; col < b.cols; ++col) {
              const std::size_t src = b.offset + r * b.cols + col;
              if (const Matrix* dF = dmat(F, b.i + p)) {
                const auto* tb = L.find(p + 1, b.i);
                for (std::size_t s = 0; s < dF->rows(); ++s)
                  if (!dF->at(s, r).is_zero()) m.at(tb->offset + s * tb->cols + col, src) += dF->at(s, r);
              }
              if (const Matrix* dE = dmat(E, b.i - 1)) {
                const auto* tb = L.find(p + 1, b.i - 1);
                for (std::size_t t = 0; t < dE->cols(); ++t)
                  if (!dE->at(col, t).is_zero()) {
                    RingElement v = dE->at(col, t);
                    if (p % 2 == 0) m.at(tb->offset + r * tb->cols + t, src) -= v;
                    else m.at(tb->offset + r * tb->cols + t, src) += v;
                  }
              }
            }
        c.set_differential(x, y, p, std::move(m));
      }
    }

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const auto& Lf = lay[x][y];
        const auto& Lg = lay[y][z];
        const auto& Lh = lay[x][z];
        for (const auto& [p, fblocks] : Lf.blocks)
          for (const auto& [q, gblocks] : Lg.blocks) {
            std::vector<CompEntry> entries;
            for (const auto& fb : fblocks) {
              const auto* gb = Lg.find(q, fb.i + p);
              if (!gb) continue;
              const auto* hb = Lh.find(p + q, fb.i);
              for (std::size_t r = 0; r < fb.rows; ++r)
                for (std::size_t r2 = 0; r2 < gb->rows; ++r2)
                  for (std::size_t col = 0; col < fb.cols; ++col)
                    entries.push_back({static_cast<std::uint32_t>(hb->offset + r2 * hb->cols + col),
                                       static_cast<std::uint32_t>(gb->offset + r2 * gb->cols + r),
                                       static_cast<std::uint32_t>(fb.offset + r * fb.cols + col),
                                       RingElement::scalar(1, 0)});
            }
            c.set_composition(x, y, z, q, p, std::move(entries));
          }
      }

  for (std::size_t x = 0; x < n; ++x) {
    Vector u = zero_vector(c.dim(x, x, 0), 0);
    if (lay[x][x].blocks.count(0))
      for (const auto& b : lay[x][x].blocks.at(0))
        for (std::size_t r = 0; r < b.rows; ++r) u[b.offset + r * b.cols + r] = RingElement::scalar(1, 0);
    c.set_unit(x, std::move(u));
  }
  return c;
}

DgCategory opposite(const DgCategory& c) {
  DgCategory op(c.ring(), c.labels());
  const std::size_t n = c.object_count();
  for (ObjectId x = 0; x < n; ++x)
    for (ObjectId y = 0; y < n; ++y) op.set_hom(x, y, c.hom(y, x));
  for (const auto& [key, m] : c.differentials()) {
    auto [x, y, p] = key;
    op.set_differential(y, x, p, m);
  }
  // g ∘op f = (−1)^{|f||g|} f∘g; C's block (z,y,x,|f|,|g|) becomes op's block (x,y,z,|g|,|f|).
  for (const auto& [key, entries] : c.compositions()) {
    auto [z, y, x, pf, qg] = key;
    std::vector<CompEntry> flipped;
    flipped.reserve(entries.size());
    for (const auto& e : entries) {
      RingElement coef = e.coef;
      if ((pf * qg) % 2 != 0) coef = -coef;
      flipped.push_back({e.out, e.right, e.left, coef});
    }
    op.set_composition(x, y, z, qg, pf, std::move(flipped));
  }
  for (ObjectId x = 0; x < n; ++x) op.set_unit(x, c.unit_coords(x));
  return op;
}

std::uint64_t witness_solver_calls() { return g_witness_calls.load(); }
void reset_witness_solver_calls() { g_witness_calls.store(0); }

bool verify_witness(const DgCategory& c, const Morphism& alpha, const EquivalenceWitness& w) {
  const ObjectId x = alpha.source, y = alpha.target;
  if (w.a.source != y || w.a.target != x || w.a.degree != 0) return false;
  if (w.g.source != x || w.g.target != x || w.g.degree != -1) return false;
  if (w.h.source != y || w.h.target != y || w.h.degree != -1) return false;
  if (!c.d(w.a).is_zero()) return false;
  if (!(c.compose(w.a, alpha) == c.unit(x) + c.d(w.g))) return false;
  return c.compose(alpha, w.a) == c.unit(y) + c.d(w.h);
}

std::optional<EquivalenceWitness> find_equivalence_witness(const DgCategory& c, const Morphism& alpha) {
  ++g_witness_calls;
  if (alpha.degree != 0) throw std::invalid_argument("equivalence witness: morphism must have degree 0");
  if (alpha.coords.size() != c.dim(alpha.source, alpha.target, 0))
    throw StructuralError("equivalence witness: coordinate length mismatch");
  if (!c.d(alpha).is_zero()) throw std::invalid_argument("equivalence witness: morphism is not closed");

  const ObjectId x = alpha.source, y = alpha.target;
  const std::size_t rank = c.rank();
  const std::size_t na = c.dim(y, x, 0), ng = c.dim(x, x, -1), nh = c.dim(y, y, -1);
  const std::size_t r1 = c.dim(y, x, 1), r2 = c.dim(x, x, 0), r3 = c.dim(y, y, 0);
  Matrix m(r1 + r2 + r3, na + ng + nh, rank);
  Vector rhs = zero_vector(r1 + r2 + r3, rank);

  for (std::size_t j = 0; j < na; ++j) {
    Morphism e = c.basis(y, x, 0, j);
    Morphism de = c.d(e), ea = c.compose(e, alpha), ae = c.compose(alpha, e);
    for (std::size_t i = 0; i < r1; ++i) m.at(i, j) = de.coords[i];
    for (std::size_t i = 0; i < r2; ++i) m.at(r1 + i, j) = ea.coords[i];
    for (std::size_t i = 0; i < r3; ++i) m.at(r1 + r2 + i, j) = ae.coords[i];
  }
  for (std::size_t j = 0; j < ng; ++j) {
    Morphism dg = c.d(c.basis(x, x, -1, j));
    for (std::size_t i = 0; i < r2; ++i) m.at(r1 + i, na + j) = -dg.coords[i];
  }
  for (std::size_t j = 0; j < nh; ++j) {
    Morphism dh = c.d(c.basis(y, y, -1, j));
    for (std::size_t i = 0; i < r3; ++i) m.at(r1 + r2 + i, na + ng + j) = -dh.coords[i];
  }
  const Vector& ux = c.unit_coords(x);
  const Vector& uy = c.unit_coords(y);
  for (std::size_t i = 0; i < r2; ++i) rhs[r1 + i] = ux[i];
  for (std::size_t i = 0; i < r3; ++i) rhs[r1 + r2 + i] = uy[i];

  auto sol = solve_linear(m, rhs);
  if (!sol) return std::nullopt;
  EquivalenceWitness w{c.zero(y, x, 0), c.zero(x, x, -1), c.zero(y, y, -1)};
  for (std::size_t j = 0; j < na; ++j) w.a.coords[j] = (*sol)[j];
  for (std::size_t j = 0; j < ng; ++j) w.g.coords[j] = (*sol)[na + j];
  for (std::size_t j = 0; j < nh; ++j) w.h.coords[j] = (*sol)[na + ng + j];
  return w;
}

}  // namespace dgn
