#include "dgnerve/mc.hpp"

namespace dgn {

namespace {

template <class F>
DgCategory map_coefficients(const DgCategory& c, const SquareZeroRing& ring, F&& f) {
  DgCategory out(ring, c.labels());
  const std::size_t n = c.object_count();
  for (ObjectId x = 0; x < n; ++x)
    for (ObjectId y = 0; y < n; ++y) out.set_hom(x, y, c.hom(x, y));
  for (const auto& [key, m] : c.differentials()) {
    auto [x, y, p] = key;
    Matrix mm(m.rows(), m.cols(), ring.ideal_rank());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) mm.at(i, j) = f(m.at(i, j));
    out.set_differential(x, y, p, std::move(mm));
  }
  for (const auto& [key, entries] : c.compositions()) {
    auto [x, y, z, q, p] = key;
    std::vector<CompEntry> e2;
    e2.reserve(entries.size());
    for (const auto& e : entries) e2.push_back({e.out, e.left, e.right, f(e.coef)});
    out.set_composition(x, y, z, q, p, std::move(e2));
  }
  for (ObjectId x = 0; x < n; ++x) {
    Vector u;
    for (const auto& v : c.unit_coords(x)) u.push_back(f(v));
    out.set_unit(x, std::move(u));
  }
  return out;
}

}  // namespace

DgCategory tensor_with_ring(const DgCategory& p, const SquareZeroRing& ring) {
  if (p.rank() != 0) throw StructuralError("tensor_with_ring expects a category over the rationals");
  const std::size_t m = ring.ideal_rank();
  return map_coefficients(p, ring, [m](const RingElement& x) { return RingElement::scalar(x.body(), m); });
}

DgCategory reduce_category(const DgCategory& c) {
  return map_coefficients(c, SquareZeroRing(0), [](const RingElement& x) { return RingElement::scalar(x.body(), 0); });
}

Morphism change_rank(const Morphism& f, std::size_t rank) {
  Morphism g{f.source, f.target, f.degree, {}};
  g.coords.reserve(f.coords.size());
  for (const auto& x : f.coords) g.coords.push_back(change_rank(x, rank));
  return g;
}

Morphism reduce_mod_ideal(const Morphism& f) {
  Morphism g{f.source, f.target, f.degree, {}};
  g.coords.reserve(f.coords.size());
  for (const auto& x : f.coords) g.coords.push_back(RingElement::scalar(x.body(), 0));
  return g;
}

Morphism mc_curvature(const DgCategory& c, const Morphism& eta) {
  return c.d(eta) + c.compose(eta, eta);
}

bool check_mc(const DgCategory& c, const Morphism& eta) {
  if (eta.degree != 1) throw std::invalid_argument("Maurer-Cartan element must have degree 1");
  if (eta.source != eta.target) throw std::invalid_argument("Maurer-Cartan element must be an endomorphism");
  if (eta.coords.size() != c.dim(eta.source, eta.target, 1))
    throw StructuralError("Maurer-Cartan element has the wrong number of coordinates");
  return mc_curvature(c, eta).is_zero();
}

DgCategory twist_unchecked(const DgCategory& base, const std::vector<MCElement>& objs) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < objs.size(); ++i) labels.push_back(base.label(objs[i].object) + "~" + std::to_string(i));
  DgCategory t(base.ring(), labels);
  const std::size_t n = objs.size();
  for (ObjectId a = 0; a < n; ++a)
    for (ObjectId b = 0; b < n; ++b) t.set_hom(a, b, base.hom(objs[a].object, objs[b].object));

  for (ObjectId a = 0; a < n; ++a)
    for (ObjectId b = 0; b < n; ++b) {
      const ObjectId x = objs[a].object, y = objs[b].object;
      const Morphism& eta = objs[a].eta;
      const Morphism& zeta = objs[b].eta;
      for (const auto& [p, r] : base.hom(x, y).dims) {
        const std::size_t rows = base.dim(x, y, p + 1);
        if (rows == 0) continue;
        Matrix m(rows, r, base.rank());
        for (std::size_t j = 0; j < r; ++j) {
          Morphism f = base.basis(x, y, p, j);
          Morphism df = base.d(f) + base.compose(zeta, f);
          Morphism tail = base.compose(f, eta);
          if (p % 2 == 0) df -= tail;
          else df += tail;
          for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = df.coords[i];
        }
        t.set_differential(a, b, p, std::move(m));
      }
    }

  for (ObjectId a = 0; a < n; ++a)
    for (ObjectId b = 0; b < n; ++b)
      for (ObjectId cc = 0; cc < n; ++cc) {
        const ObjectId x = objs[a].object, y = objs[b].object, z = objs[cc].object;
        for (const auto& [q, rq] : base.hom(y, z).dims)
          for (const auto& [p, rp] : base.hom(x, y).dims)
            if (const auto* e = base.composition(x, y, z, q, p)) t.set_composition(a, b, cc, q, p, *e);
      }
  for (ObjectId a = 0; a < n; ++a) t.set_unit(a, base.unit_coords(objs[a].object));
  return t;
}

TwistedDgCategory twist(const DgCategory& base, std::vector<MCElement> objs) {
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const auto& o = objs[i];
    if (o.eta.source != o.object || o.eta.target != o.object)
      throw InvalidMCObject("MC object " + std::to_string(i) + ": eta is not an endomorphism of its object");
    bool ok = false;
    try {
      ok = check_mc(base, o.eta);
    } catch (const std::exception& e) {
      throw InvalidMCObject("MC object " + std::to_string(i) + ": " + e.what());
    }
    if (!ok) throw InvalidMCObject("MC object " + std::to_string(i) + " (" + base.label(o.object) +
                                   ") violates d(eta) + eta∘eta = 0");
  }
  DgCategory t = twist_unchecked(base, objs);
  return TwistedDgCategory{base, std::move(objs), std::move(t)};
}

}  // namespace dgn
