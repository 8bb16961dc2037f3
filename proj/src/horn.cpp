#include "dgnerve/horn.hpp"

#include "dgnerve/mc.hpp"

namespace dgn {

namespace {

int parity_sign(int e) { return (e % 2 == 0) ? 1 : -1; }

void require_horn_shape(const HornData& h) {
  if (h.n < 2 || h.n > kMaxSimplexDim) throw std::invalid_argument("horns need 2 <= n <= " + std::to_string(kMaxSimplexDim));
  if (h.k < 0 || h.k > h.n) throw std::invalid_argument("horn index k out of range");
  if (h.objects.size() != static_cast<std::size_t>(h.n + 1)) throw std::invalid_argument("horn object list length");
}

const Morphism& horn_cell(const HornData& h, Mask s) {
  auto it = h.cells.find(s);
  if (it == h.cells.end()) throw IncompatibleHorn("horn has no cell " + seq_key(s));
  return it->second;
}

// ρ_m = (−1)^{m(m+1)/2 − 1} for a cell with m arrows.
int reversal_sign(int m) { return parity_sign(m * (m + 1) / 2 - 1); }

Morphism reversed(const Morphism& f, int m) {
  Morphism g{f.target, f.source, f.degree, f.coords};
  if (reversal_sign(m) < 0) g = -g;
  return g;
}

Mask reverse_mask(Mask s, int n) {
  Mask r = 0;
  for (int v : vertices(s)) r |= Mask{1} << (n - v);
  return r;
}

Morphism with_sign(int sign, Morphism f) { return sign > 0 ? f : -f; }

}  // namespace

HornData extract_horn(const NerveSimplex& sigma, int k) {
  HornData h{sigma.n, k, sigma.objects, {}};
  require_horn_shape(h);
  for (const auto& [s, f] : sigma.cells)
    if (s != h.missing_face() && s != h.top()) h.cells.emplace(s, f);
  return h;
}

NerveSimplex complete(const HornData& h, const Filler& f) {
  if (f.n != h.n || f.k != h.k) throw StructuralError("filler does not belong to this horn");
  NerveSimplex s{h.n, h.objects, h.cells};
  s.cells[h.missing_face()] = f.face;
  s.cells[h.top()] = f.top;
  return s;
}

HornData reduce_mod_ideal(const HornData& h) {
  HornData r{h.n, h.k, h.objects, {}};
  for (const auto& [s, f] : h.cells) r.cells.emplace(s, reduce_mod_ideal(f));
  return r;
}

Filler reduce_mod_ideal(const Filler& f) {
  return Filler{f.n, f.k, reduce_mod_ideal(f.face), reduce_mod_ideal(f.top)};
}

Filler change_rank(const Filler& f, std::size_t rank) {
  return Filler{f.n, f.k, change_rank(f.face, rank), change_rank(f.top, rank)};
}

Report horn_compatibility(const DgCategory& c, const HornData& h, const SignPattern& signs) {
  Report report;
  try {
    require_horn_shape(h);
  } catch (const std::invalid_argument& e) {
    return {{"shape", e.what()}};
  }
  for (ObjectId x : h.objects)
    if (x >= c.object_count()) return {{"shape", "unknown object"}};
  const Mask face = h.missing_face(), top = h.top();
  for (const auto& [s, f] : h.cells)
    if (s == face || s == top || s > top || popcount(s) < 2)
      report.push_back({"shape", "unexpected cell " + seq_key(s)});
  for (Mask s : sequences(h.n)) {
    if (s == face || s == top) continue;
    auto it = h.cells.find(s);
    if (it == h.cells.end()) {
      report.push_back({"shape", "missing cell " + seq_key(s)});
      continue;
    }
    const auto v = vertices(s);
    const Morphism& f = it->second;
    const ObjectId x = h.objects[v.front()], y = h.objects[v.back()];
    bool ring_ok = true;
    for (const auto& e : f.coords) ring_ok = ring_ok && e.rank() == c.rank();
    if (f.source != x || f.target != y || f.degree != cell_degree(s) || f.coords.size() != c.dim(x, y, f.degree) ||
        !ring_ok)
      report.push_back({"shape", "cell " + seq_key(s)});
  }
  if (!report.empty()) return report;
  for (Mask s : sequences(h.n)) {
    if (s == face || s == top) continue;
    Morphism r = c.d(h.cells.at(s)) - structure_rhs(c, h.objects, h.cells, s, signs);
    if (!r.is_zero()) report.push_back({"condition", seq_key(s)});
  }
  return report;
}

int inner_face_sign(int n, int k, const SignPattern& signs) { return signs.face_sign(k, n); }

Obstruction compute_obstruction(const DgCategory& c, const HornData& h, const SignPattern& signs, bool check) {
  require_horn_shape(h);
  if (h.k == h.n) throw std::invalid_argument("k = n horns are handled through the opposite category");
  if (check) {
    Report r = horn_compatibility(c, h, signs);
    if (!r.empty()) throw IncompatibleHorn("incompatible horn: " + r.front().law + " at " + r.front().where);
  }
  Obstruction ob;
  ob.U = structure_rhs(c, h.objects, h.cells, h.missing_face(), signs);
  Morphism raw = structure_rhs(c, h.objects, h.cells, h.top(), signs);
  if (h.k == 0) {
    ob.sign = signs.composition_sign(1, h.n);
    ob.V = with_sign(ob.sign, std::move(raw));
  } else {
    ob.sign = inner_face_sign(h.n, h.k, signs);
    ob.V = std::move(raw);
  }
  return ob;
}

Report check_obstruction(const DgCategory& c, const HornData& h, const Obstruction& ob) {
  Report report;
  if (!c.d(ob.U).is_zero()) report.push_back({"d(U) = 0", "horn " + std::to_string(h.n) + "," + std::to_string(h.k)});
  Morphism dv = c.d(ob.V);
  if (h.k == 0) {
    const Morphism& alpha = horn_cell(h, mask_of({0, 1}));
    if (!(dv + c.compose(ob.U, alpha)).is_zero())
      report.push_back({"d(V) = -U a", "horn " + std::to_string(h.n) + ",0"});
  } else {
    if (!(dv + with_sign(ob.sign, ob.U)).is_zero())
      report.push_back({"sign U + d(V) = 0", "horn " + std::to_string(h.n) + "," + std::to_string(h.k)});
  }
  return report;
}

Report check_filler_system(const DgCategory& c, const HornData& h, const Obstruction& ob, const Filler& f) {
  Report report;
  const std::string where = "horn " + std::to_string(h.n) + "," + std::to_string(h.k);
  if (!(c.d(f.face) == ob.U)) report.push_back({"d(face) = U", where});
  if (h.k == 0) {
    const Morphism& alpha = horn_cell(h, mask_of({0, 1}));
    if (!(c.d(with_sign(ob.sign, f.top)) == c.compose(f.face, alpha) + ob.V))
      report.push_back({"d(top) = face a + V", where});
  } else {
    if (!(c.d(f.top) == with_sign(ob.sign, f.face) + ob.V)) report.push_back({"d(top) = sign face + V", where});
  }
  return report;
}

Filler fill_inner(const DgCategory& c, const HornData& h, const SignPattern& signs, bool check) {
  require_horn_shape(h);
  if (!h.inner()) throw std::invalid_argument("fill_inner needs 0 < k < n");
  Obstruction ob = compute_obstruction(c, h, signs, check);
  Filler f{h.n, h.k, with_sign(-ob.sign, ob.V), c.zero(h.objects.front(), h.objects.back(), 1 - h.n)};
  return f;
}

Filler fill_outer_zero(const DgCategory& c, const HornData& h, const SignPattern& signs) {
  require_horn_shape(h);
  if (h.k != 0) throw std::invalid_argument("fill_outer_zero needs k = 0");
  Obstruction ob = compute_obstruction(c, h, signs);
  const Morphism& alpha = horn_cell(h, mask_of({0, 1}));
  auto w = find_equivalence_witness(c, alpha);
  if (!w) throw CannotFillOuterHorn("edge 0,1 is not an equivalence");
  const int pm = parity_sign(h.n);
  Morphism x1 = -c.compose(ob.V, w->a) + with_sign(pm, c.compose(ob.U, w->h));
  Morphism x0 = c.compose(c.compose(x1, w->h), alpha) - c.compose(c.compose(x1, alpha), w->g) - c.compose(ob.V, w->g);
  return Filler{h.n, 0, std::move(x1), with_sign(pm * ob.sign, std::move(x0))};
}

CellMap reverse_cells(const CellMap& cells, int n) {
  CellMap out;
  for (const auto& [s, f] : cells) out.emplace(reverse_mask(s, n), reversed(f, arrows(s)));
  return out;
}

NerveSimplex reverse_simplex(const NerveSimplex& sigma) {
  NerveSimplex r{sigma.n, {sigma.objects.rbegin(), sigma.objects.rend()}, reverse_cells(sigma.cells, sigma.n)};
  return r;
}

HornData reverse_horn(const HornData& h) {
  return HornData{h.n, h.n - h.k, {h.objects.rbegin(), h.objects.rend()}, reverse_cells(h.cells, h.n)};
}

Filler reverse_filler(const Filler& f) {
  return Filler{f.n, f.n - f.k, reversed(f.face, f.n - 1), reversed(f.top, f.n)};
}

Filler fill_outer_n(const DgCategory& c, const HornData& h) {
  require_horn_shape(h);
  if (h.k != h.n) throw std::invalid_argument("fill_outer_n needs k = n");
  DgCategory op = opposite(c);
  try {
    return reverse_filler(fill_outer_zero(op, reverse_horn(h)));
  } catch (const CannotFillOuterHorn&) {
    throw CannotFillOuterHorn("edge " + std::to_string(h.n - 1) + "," + std::to_string(h.n) +
                              " is not an equivalence");
  } catch (const IncompatibleHorn& e) {
    throw IncompatibleHorn(e.what());
  }
}

Filler fill_horn(const DgCategory& c, const HornData& h) {
  require_horn_shape(h);
  if (h.inner()) return fill_inner(c, h);
  if (h.k == 0) return fill_outer_zero(c, h);
  return fill_outer_n(c, h);
}

namespace {

LiftCorrection reverse_correction(const LiftCorrection& lc, int n) {
  return LiftCorrection{reversed(lc.phi, n - 1), reversed(lc.psi, n), reversed(lc.eps_face, n - 1),
                        reversed(lc.eps_top, n)};
}

}  // namespace

LiftResult lift_filler(const DgCategory& c, const HornData& h, const Filler& filler_mod_i,
                       const std::optional<Filler>& coordinate_lift) {
  require_horn_shape(h);
  if (h.k == h.n) {
    std::optional<Filler> lift;
    if (coordinate_lift) lift = reverse_filler(*coordinate_lift);
    LiftResult r = lift_filler(opposite(c), reverse_horn(h), reverse_filler(filler_mod_i), lift);
    return LiftResult{reverse_filler(r.filler), reverse_correction(r.correction, h.n)};
  }
  if (filler_mod_i.n != h.n || filler_mod_i.k != h.k) throw InvalidReduction("filler does not belong to this horn");

  const DgCategory residue = reduce_category(c);
  const HornData h0 = reduce_mod_ideal(h);
  if (!validate_simplex(residue, complete(h0, filler_mod_i)).empty())
    throw InvalidReduction("filler is not valid modulo the ideal");

  Filler lift = coordinate_lift ? *coordinate_lift : change_rank(filler_mod_i, c.rank());
  if (!(reduce_mod_ideal(lift) == filler_mod_i)) throw InvalidReduction("coordinate lift does not reduce to the filler");

  Obstruction ob = compute_obstruction(c, h);
  LiftCorrection lc;
  lc.phi = c.d(lift.face) - ob.U;
  if (h.k == 0) {
    const Morphism& alpha = horn_cell(h, mask_of({0, 1}));
    lc.psi = c.d(with_sign(ob.sign, lift.top)) - c.compose(lift.face, alpha) - ob.V;
  } else {
    lc.psi = c.d(lift.top) - with_sign(ob.sign, lift.face) - ob.V;
  }
  for (const auto* t : {&lc.phi, &lc.psi})
    for (const auto& e : t->coords)
      if (!e.in_ideal()) throw InvalidReduction("error term has a nonzero residue");

  if (h.k == 0) {
    const Morphism& alpha = horn_cell(h, mask_of({0, 1}));
    auto w = find_equivalence_witness(c, alpha);
    if (!w) throw CannotFillOuterHorn("edge 0,1 is not an equivalence");
    const int pm = parity_sign(h.n);
    lc.eps_face = -c.compose(lc.psi, w->a) + with_sign(pm, c.compose(lc.phi, w->h));
    Morphism e0 = c.compose(c.compose(lc.eps_face, w->h), alpha) - c.compose(c.compose(lc.eps_face, alpha), w->g) -
                  c.compose(lc.psi, w->g);
    lc.eps_top = with_sign(pm * ob.sign, std::move(e0));
  } else {
    lc.eps_face = with_sign(-ob.sign, lc.psi);
    lc.eps_top = c.zero(h.objects.front(), h.objects.back(), 1 - h.n);
  }
  Filler out{h.n, h.k, lift.face - lc.eps_face, lift.top - lc.eps_top};
  return LiftResult{std::move(out), std::move(lc)};
}

}  // namespace dgn
