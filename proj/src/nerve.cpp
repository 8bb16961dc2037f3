#include "dgnerve/nerve.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace dgn {

namespace {

int parity_sign(int e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace

int popcount(Mask s) { return std::popcount(s); }

std::vector<int> vertices(Mask s) {
  std::vector<int> v;
  for (int i = 0; s != 0; ++i, s >>= 1)
    if (s & 1u) v.push_back(i);
  return v;
}

Mask mask_of(const std::vector<int>& vs) {
  Mask s = 0;
  for (int v : vs) {
    if (v < 0 || v > kMaxSimplexDim) throw std::out_of_range("vertex index out of range");
    s |= Mask{1} << v;
  }
  return s;
}

Mask from_position(Mask s, int j) {
  auto v = vertices(s);
  return mask_of(std::vector<int>(v.begin() + j, v.end()));
}

Mask upto_position(Mask s, int j) {
  auto v = vertices(s);
  return mask_of(std::vector<int>(v.begin(), v.begin() + j + 1));
}

Mask drop_position(Mask s, int j) {
  auto v = vertices(s);
  return s & ~(Mask{1} << v.at(j));
}

std::string seq_key(Mask s) {
  std::string out;
  for (int v : vertices(s)) {
    if (!out.empty()) out += ",";
    out += std::to_string(v);
  }
  return out;
}

Mask parse_seq_key(const std::string& key) {
  std::vector<int> vs;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      throw std::invalid_argument("malformed sequence key '" + key + "'");
    vs.push_back(std::stoi(item));
  }
  for (std::size_t i = 1; i < vs.size(); ++i)
    if (vs[i] <= vs[i - 1]) throw std::invalid_argument("sequence key '" + key + "' is not strictly increasing");
  if (vs.empty()) throw std::invalid_argument("empty sequence key");
  return mask_of(vs);
}

std::vector<Mask> sequences(int n) {
  std::vector<Mask> out;
  for (Mask s = 1; s <= full_mask(n); ++s)
    if (popcount(s) >= 2) out.push_back(s);
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
    if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
    return vertices(a) < vertices(b);
  });
  return out;
}

int SignPattern::composition_sign(int j, int m) const {
  return parity_sign((comp_from_end ? m - j : j) + 1 + (comp_flip ? 1 : 0));
}

int SignPattern::face_sign(int j, int m) const {
  return parity_sign((face_from_end ? m - j : j) + (face_flip ? 1 : 0));
}

int SignPattern::cochain_face_sign(int j, int m, int degree) const {
  return parity_sign(degree) * face_sign(j, m);
}

int SignPattern::cochain_comp_sign(int j, int m, int right_degree) const {
  const int e = comp_from_end ? m - j : j;
  return parity_sign((comp_flip ? 1 : 0) + right_degree * e);
}

int SignPattern::code() const {
  return (comp_from_end ? 1 : 0) | (comp_flip ? 2 : 0) | (face_from_end ? 4 : 0) | (face_flip ? 8 : 0);
}

SignPattern SignPattern::from_code(int code) {
  if (code < 0 || code > 15) throw std::out_of_range("sign pattern code must be in 0..15");
  return SignPattern{(code & 1) != 0, (code & 2) != 0, (code & 4) != 0, (code & 8) != 0};
}

std::string SignPattern::describe() const {
  std::string c = comp_from_end ? "m-j" : "j";
  std::string f = face_from_end ? "m-j" : "j";
  return "composition (-1)^(" + c + (comp_flip ? "" : "+1") + "), face (-1)^(" + f + (face_flip ? "+1" : "") + ")";
}

std::vector<SignPattern> all_sign_patterns() {
  std::vector<SignPattern> out;
  for (int code = 0; code < 16; ++code) out.push_back(SignPattern::from_code(code));
  return out;
}

bool reproduces_two_simplex_form(const SignPattern& s) {
  return s.composition_sign(1, 2) == 1 && s.face_sign(1, 2) == -1;
}

namespace {

using Word = std::vector<Mask>;
using Poly = std::map<Word, long>;

Poly rhs_poly(Mask s, const SignPattern& signs) {
  Poly p;
  const int m = arrows(s);
  for (int j = 1; j < m; ++j) {
    p[{from_position(s, j), upto_position(s, j)}] += signs.composition_sign(j, m);
    p[{drop_position(s, j)}] += signs.face_sign(j, m);
  }
  return p;
}

// Leibniz d(g∘f) = dg∘f + (−1)^{|g|} g∘df, with d α(I) replaced by its structure equation.
void add_differential(const Word& w, long coef, const SignPattern& signs, Poly& out) {
  int prefix = 0;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (arrows(w[t]) >= 2) {
      const long sgn = parity_sign(prefix);
      for (const auto& [piece, c] : rhs_poly(w[t], signs)) {
        Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(t));
        nw.insert(nw.end(), piece.begin(), piece.end());
        nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(t) + 1, w.end());
        out[nw] += sgn * coef * c;
      }
    }
    prefix += cell_degree(w[t]);
  }
}

}  // namespace

bool structure_equation_consistent(const SignPattern& signs, int max_vertices) {
  for (int k = 3; k <= max_vertices; ++k) {
    Mask s = full_mask(k - 1);
    Poly dd;
    for (const auto& [w, c] : rhs_poly(s, signs)) add_differential(w, c, signs, dd);
    for (const auto& [w, c] : dd)
      if (c != 0) return false;
  }
  return true;
}

const Morphism& NerveSimplex::cell(Mask s) const {
  auto it = cells.find(s);
  if (it == cells.end()) throw std::out_of_range("simplex has no cell " + seq_key(s));
  return it->second;
}

const Morphism& NerveCochain::cell(Mask s) const {
  auto it = cells.find(s);
  if (it == cells.end()) throw std::out_of_range("cochain has no cell " + seq_key(s));
  return it->second;
}

Morphism structure_rhs(const DgCategory& c, const std::vector<ObjectId>& objects, const CellMap& cells, Mask s,
                       const SignPattern& signs) {
  const auto v = vertices(s);
  const int m = static_cast<int>(v.size()) - 1;
  Morphism out = c.zero(objects.at(v.front()), objects.at(v.back()), 2 - m);
  for (int j = 1; j < m; ++j) {
    auto left = cells.find(from_position(s, j));
    auto right = cells.find(upto_position(s, j));
    if (left != cells.end() && right != cells.end()) {
      Morphism t = c.compose(left->second, right->second);
      if (signs.composition_sign(j, m) > 0) out += t;
      else out -= t;
    }
    auto f = cells.find(drop_position(s, j));
    if (f != cells.end()) {
      if (signs.face_sign(j, m) > 0) out += f->second;
      else out -= f->second;
    }
  }
  return out;
}

Morphism simplex_residual(const DgCategory& c, const NerveSimplex& sigma, Mask s, const SignPattern& signs) {
  Morphism r = structure_rhs(c, sigma.objects, sigma.cells, s, signs);
  auto it = sigma.cells.find(s);
  if (it != sigma.cells.end()) return c.d(it->second) - r;
  return -r;
}

namespace {

void check_cell_shape(const DgCategory& c, const std::vector<ObjectId>& objects, Mask s, const Morphism& f,
                      int degree, Report& report) {
  const auto v = vertices(s);
  const ObjectId x = objects.at(v.front()), y = objects.at(v.back());
  if (f.source != x || f.target != y || f.degree != degree || f.coords.size() != c.dim(x, y, degree)) {
    report.push_back({"shape", "cell " + seq_key(s)});
    return;
  }
  for (const auto& e : f.coords)
    if (e.rank() != c.rank()) {
      report.push_back({"shape", "cell " + seq_key(s) + " has coefficients in the wrong ring"});
      return;
    }
}

}  // namespace

Report validate_simplex(const DgCategory& c, const NerveSimplex& sigma, const SignPattern& signs) {
  Report report;
  if (sigma.n < 0 || sigma.n > kMaxSimplexDim) return {{"shape", "dimension out of range"}};
  if (sigma.objects.size() != static_cast<std::size_t>(sigma.n + 1)) return {{"shape", "object list length"}};
  for (ObjectId x : sigma.objects)
    if (x >= c.object_count()) return {{"shape", "unknown object"}};
  const auto seqs = sequences(sigma.n);
  for (const auto& [s, f] : sigma.cells)
    if (s > full_mask(sigma.n) || popcount(s) < 2) report.push_back({"shape", "unexpected cell " + seq_key(s)});
  for (Mask s : seqs) {
    auto it = sigma.cells.find(s);
    if (it == sigma.cells.end()) report.push_back({"shape", "missing cell " + seq_key(s)});
    else check_cell_shape(c, sigma.objects, s, it->second, cell_degree(s), report);
  }
  if (!report.empty()) return report;
  for (Mask s : seqs)
    if (!simplex_residual(c, sigma, s, signs).is_zero()) report.push_back({"condition", seq_key(s)});
  return report;
}

Report validate_star(const DgCategory& c, const NerveSimplex& sigma) {
  Report report;
  for (Mask s : sequences(sigma.n)) {
    if (popcount(s) != 2) continue;
    const Morphism& e = sigma.cell(s);
    std::optional<EquivalenceWitness> w;
    try {
      w = find_equivalence_witness(c, e);
    } catch (const std::invalid_argument&) {
      w.reset();
    }
    if (!w) report.push_back({"equivalence", seq_key(s)});
  }
  return report;
}

NerveSimplex identity_simplex(const DgCategory& c, ObjectId x, int n) {
  NerveSimplex s{n, std::vector<ObjectId>(static_cast<std::size_t>(n + 1), x), {}};
  for (Mask m : sequences(n))
    s.cells[m] = popcount(m) == 2 ? c.unit(x) : c.zero(x, x, cell_degree(m));
  return s;
}

NerveSimplex face(const NerveSimplex& sigma, int j) {
  if (j < 0 || j > sigma.n) throw std::out_of_range("face index out of range");
  if (sigma.n == 0) throw std::out_of_range("a 0-simplex has no faces");
  NerveSimplex out{sigma.n - 1, {}, {}};
  for (int v = 0; v <= sigma.n; ++v)
    if (v != j) out.objects.push_back(sigma.objects.at(v));
  for (Mask s : sequences(out.n)) {
    std::vector<int> old;
    for (int v : vertices(s)) old.push_back(v < j ? v : v + 1);
    out.cells[s] = sigma.cell(mask_of(old));
  }
  return out;
}

NerveSimplex degeneracy(const DgCategory& c, const NerveSimplex& sigma, int j) {
  if (j < 0 || j > sigma.n) throw std::out_of_range("degeneracy index out of range");
  NerveSimplex out{sigma.n + 1, {}, {}};
  for (int v = 0; v <= sigma.n + 1; ++v) out.objects.push_back(sigma.objects.at(v <= j ? v : v - 1));
  const Mask pair = (Mask{1} << j) | (Mask{1} << (j + 1));
  for (Mask s : sequences(out.n)) {
    const auto v = vertices(s);
    if ((s & pair) == pair) {
      out.cells[s] = popcount(s) == 2 ? c.unit(sigma.objects.at(j))
                                      : c.zero(out.objects.at(v.front()), out.objects.at(v.back()), cell_degree(s));
      continue;
    }
    std::vector<int> old;
    for (int x : v) old.push_back(x <= j ? x : x - 1);
    out.cells[s] = sigma.cell(mask_of(old));
  }
  return out;
}

namespace {

Morphism zero_cell(const DgCategory& c, const std::vector<ObjectId>& src, const std::vector<ObjectId>& tgt, Mask s,
                   int degree) {
  const auto v = vertices(s);
  return c.zero(src.at(v.front()), tgt.at(v.back()), degree);
}

// Σ_{0<j<m} sign · left(I≥j)∘right(I≤j)
CellMap star_cells(const DgCategory& c, const CellMap& left, const CellMap& right, int right_degree, int out_degree,
                   const std::vector<ObjectId>& src, const std::vector<ObjectId>& tgt, int n,
                   const SignPattern& signs) {
  CellMap out;
  for (Mask s : sequences(n)) {
    const int m = arrows(s);
    Morphism acc = zero_cell(c, src, tgt, s, out_degree - m);
    for (int j = 1; j < m; ++j) {
      auto l = left.find(from_position(s, j));
      auto r = right.find(upto_position(s, j));
      if (l == left.end() || r == right.end()) continue;
      Morphism t = c.compose(l->second, r->second);
      if (signs.cochain_comp_sign(j, m, right_degree) > 0) acc += t;
      else acc -= t;
    }
    out.emplace(s, std::move(acc));
  }
  return out;
}

void require_same_simplex(const NerveSimplex& a, const NerveSimplex& b, const char* what) {
  if (a.n != b.n || a.objects != b.objects || !(a.cells == b.cells))
    throw StructuralError(std::string("cochain endpoints do not match: ") + what);
}

}  // namespace

NerveCochain zero_cochain(const DgCategory& c, const NerveSimplex& f, const NerveSimplex& g, int degree) {
  if (f.n != g.n) throw StructuralError("cochain endpoints have different dimensions");
  NerveCochain eta{f.n, degree, f, g, {}};
  for (Mask s : sequences(f.n)) eta.cells.emplace(s, zero_cell(c, f.objects, g.objects, s, degree - arrows(s)));
  return eta;
}

NerveCochain untwisted_differential(const DgCategory& c, const NerveCochain& eta, const SignPattern& signs) {
  NerveCochain out{eta.n, eta.degree + 1, eta.source, eta.target, {}};
  for (Mask s : sequences(eta.n)) {
    const int m = arrows(s);
    Morphism acc = c.d(eta.cell(s));
    for (int j = 1; j < m; ++j) {
      const Morphism& f = eta.cell(drop_position(s, j));
      if (signs.cochain_face_sign(j, m, eta.degree) > 0) acc += f;
      else acc -= f;
    }
    out.cells.emplace(s, std::move(acc));
  }
  return out;
}

NerveCochain cochain_compose(const DgCategory& c, const NerveCochain& eta, const NerveCochain& phi,
                             const SignPattern& signs) {
  if (eta.n != phi.n) throw StructuralError("cochain_compose: dimension mismatch");
  require_same_simplex(eta.source, phi.target, "cochain_compose");
  NerveCochain out{eta.n, eta.degree + phi.degree, phi.source, eta.target, {}};
  out.cells = star_cells(c, eta.cells, phi.cells, phi.degree, out.degree, phi.source.objects, eta.target.objects,
                         eta.n, signs);
  return out;
}

NerveCochain cochain_differential(const DgCategory& c, const NerveCochain& eta, const SignPattern& signs) {
  NerveCochain out = untwisted_differential(c, eta, signs);
  const auto& F = eta.source;
  const auto& G = eta.target;
  CellMap g_eta = star_cells(c, G.cells, eta.cells, eta.degree, out.degree, F.objects, G.objects, eta.n, signs);
  CellMap eta_f = star_cells(c, eta.cells, F.cells, 1, out.degree, F.objects, G.objects, eta.n, signs);
  for (auto& [s, f] : out.cells) {
    f += g_eta.at(s);
    if (eta.degree % 2 == 0) f -= eta_f.at(s);
    else f += eta_f.at(s);
  }
  return out;
}

NerveCochain as_cochain(const NerveSimplex& sigma) { return NerveCochain{sigma.n, 1, sigma, sigma, sigma.cells}; }

bool cochain_is_zero(const NerveCochain& eta) {
  for (const auto& [s, f] : eta.cells)
    if (!f.is_zero()) return false;
  return true;
}

bool cochains_equal(const NerveCochain& a, const NerveCochain& b) {
  return a.n == b.n && a.degree == b.degree && a.cells == b.cells;
}

}  // namespace dgn
