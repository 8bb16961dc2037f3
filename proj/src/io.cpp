#include "dgnerve/io.hpp"

namespace dgn {

namespace {

[[noreturn]] void fail(const std::string& what) { throw DocumentError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::size_t index_value(const Json& v, const char* what) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    fail(std::string(what) + " must be a non-negative integer");
  return v.get<std::size_t>();
}

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) fail("rational must be a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

ObjectId object_ref(const DgCategory& c, const Json& j) {
  if (!j.is_string()) fail("object reference must be a label");
  auto id = c.find(j.get<std::string>());
  if (!id) fail("unknown object '" + j.get<std::string>() + "'");
  return *id;
}

std::vector<ObjectId> object_list(const DgCategory& c, const Json& j, std::size_t expected) {
  if (!j.is_array() || j.size() != expected) fail("object list must have " + std::to_string(expected) + " entries");
  std::vector<ObjectId> out;
  for (const auto& x : j) out.push_back(object_ref(c, x));
  return out;
}

Json labels_of(const DgCategory& c, const std::vector<ObjectId>& objects) {
  Json a = Json::array();
  for (ObjectId x : objects) a.push_back(c.label(x));
  return a;
}

// Keys in the order of sequences(n): by length, then lexicographic.
Json cells_to_json(const CellMap& cells, int n) {
  Json j = Json::object();
  for (Mask s : sequences(n))
    if (auto it = cells.find(s); it != cells.end()) j[seq_key(s)] = coords_to_json(it->second.coords);
  return j;
}

Morphism cell_from_json(const DgCategory& c, const std::vector<ObjectId>& objects, Mask s, const Json& coords) {
  const auto v = vertices(s);
  const ObjectId x = objects.at(v.front()), y = objects.at(v.back());
  const int degree = cell_degree(s);
  Vector cv = coords_from_json(coords, c.rank());
  if (cv.size() != c.dim(x, y, degree))
    fail("cell " + seq_key(s) + " needs " + std::to_string(c.dim(x, y, degree)) + " coordinates");
  return Morphism{x, y, degree, std::move(cv)};
}

Mask key_in_range(const std::string& key, int n) {
  Mask s = 0;
  try {
    s = parse_seq_key(key);
  } catch (const std::exception& e) {
    fail("bad cell key '" + key + "': " + e.what());
  }
  if (s > full_mask(n) || popcount(s) < 2) fail("cell key '" + key + "' is out of range");
  return s;
}

int dimension_field(const Json& j) {
  const int n = int_field(j, "n");
  if (n < 0 || n > kMaxSimplexDim) fail("dimension n out of range");
  return n;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(ring_to_json(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json ring_to_json(const RingElement& x) {
  bool pure = true;
  for (const auto& v : x.ideal()) pure = pure && sgn(v) == 0;
  if (pure) return to_string(x.body());
  Json ideal = Json::array();
  for (const auto& v : x.ideal()) ideal.push_back(to_string(v));
  return Json::array({to_string(x.body()), std::move(ideal)});
}

RingElement ring_from_json(const Json& j, std::size_t rank) {
  if (j.is_string()) return RingElement::scalar(rational_from_json(j), rank);
  if (!j.is_array() || j.size() != 2 || !j[1].is_array()) fail("ring element must be \"p/q\" or [body, [ideal...]]");
  if (j[1].size() != rank) fail("ideal part has " + std::to_string(j[1].size()) + " entries, ring has rank " +
                                std::to_string(rank));
  std::vector<Rational> ideal;
  for (const auto& v : j[1]) ideal.push_back(rational_from_json(v));
  return RingElement(rational_from_json(j[0]), std::move(ideal));
}

Json coords_to_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(ring_to_json(x));
  return a;
}

Vector coords_from_json(const Json& j, std::size_t rank) {
  if (!j.is_array()) fail("coordinates must be an array");
  Vector v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(ring_from_json(x, rank));
  return v;
}

Json category_to_json(const DgCategory& c) {
  Json j;
  j["kind"] = "category";
  j["ring"] = {{"ideal_rank", c.rank()}};
  j["objects"] = c.labels();
  Json homs = Json::array();
  for (ObjectId x = 0; x < c.object_count(); ++x)
    for (ObjectId y = 0; y < c.object_count(); ++y) {
      const auto& m = c.hom(x, y);
      if (m.dims.empty()) continue;
      Json ranks = Json::object();
      for (const auto& [p, r] : m.dims) ranks[std::to_string(p)] = r;
      homs.push_back({{"source", c.label(x)}, {"target", c.label(y)}, {"ranks", std::move(ranks)}});
    }
  j["homs"] = std::move(homs);
  Json diffs = Json::array();
  for (const auto& [key, m] : c.differentials()) {
    auto [x, y, p] = key;
    diffs.push_back({{"source", c.label(x)}, {"target", c.label(y)}, {"degree", p}, {"matrix", matrix_to_json(m)}});
  }
  j["differentials"] = std::move(diffs);
  Json comps = Json::array();
  for (const auto& [key, entries] : c.compositions()) {
    auto [x, y, z, q, p] = key;
    Json es = Json::array();
    for (const auto& e : entries) es.push_back(Json::array({e.out, e.left, e.right, ring_to_json(e.coef)}));
    comps.push_back({{"objects", Json::array({c.label(x), c.label(y), c.label(z)})},
                     {"degrees", Json::array({q, p})},
                     {"entries", std::move(es)}});
  }
  j["compositions"] = std::move(comps);
  Json units = Json::object();
  for (ObjectId x = 0; x < c.object_count(); ++x) units[c.label(x)] = coords_to_json(c.unit_coords(x));
  j["units"] = std::move(units);
  return j;
}

DgCategory category_from_json(const Json& j) {
  const Json& ring = field(j, "ring");
  const std::size_t rank = index_value(field(ring, "ideal_rank"), "ideal_rank");
  if (rank > 64) fail("ideal_rank is unreasonably large");
  const Json& objs = field(j, "objects");
  if (!objs.is_array()) fail("'objects' must be an array of labels");
  std::vector<std::string> labels;
  for (const auto& o : objs) {
    if (!o.is_string()) fail("object labels must be strings");
    labels.push_back(o.get<std::string>());
  }
  DgCategory c;
  try {
    c = DgCategory(SquareZeroRing(rank), labels);
  } catch (const StructuralError& e) {
    fail(e.what());
  }

  const Json& homs = field(j, "homs");
  if (!homs.is_array()) fail("'homs' must be an array");
  for (const auto& h : homs) {
    const ObjectId x = object_ref(c, field(h, "source")), y = object_ref(c, field(h, "target"));
    const Json& ranks = field(h, "ranks");
    if (!ranks.is_object()) fail("'ranks' must map degrees to ranks");
    GradedModule m;
    for (const auto& [deg, r] : ranks.items()) {
      int p = 0;
      try {
        std::size_t used = 0;
        p = std::stoi(deg, &used);
        if (used != deg.size()) throw std::invalid_argument(deg);
      } catch (const std::exception&) {
        fail("bad degree key '" + deg + "'");
      }
      const std::size_t r_value = index_value(r, "rank");
      if (r_value > 4096) fail("hom rank " + std::to_string(r_value) + " is too large");
      m.set(p, r_value);
    }
    c.set_hom(x, y, std::move(m));
  }

  const Json& diffs = field(j, "differentials");
  if (!diffs.is_array()) fail("'differentials' must be an array");
  for (const auto& d : diffs) {
    const ObjectId x = object_ref(c, field(d, "source")), y = object_ref(c, field(d, "target"));
    const int p = int_field(d, "degree");
    const Json& rows = field(d, "matrix");
    const std::size_t nr = c.dim(x, y, p + 1), nc = c.dim(x, y, p);
    const std::string where = location(c, x, y, p);
    if (!rows.is_array() || rows.size() != nr) fail("differential at " + where + " needs " + std::to_string(nr) + " rows");
    Matrix m(nr, nc, rank);
    for (std::size_t r = 0; r < nr; ++r) {
      if (!rows[r].is_array() || rows[r].size() != nc)
        fail("differential at " + where + " needs " + std::to_string(nc) + " columns");
      for (std::size_t col = 0; col < nc; ++col) m.at(r, col) = ring_from_json(rows[r][col], rank);
    }
    c.set_differential(x, y, p, std::move(m));
  }

  const Json& comps = field(j, "compositions");
  if (!comps.is_array()) fail("'compositions' must be an array");
  for (const auto& t : comps) {
    const Json& o = field(t, "objects");
    const Json& dg = field(t, "degrees");
    if (!o.is_array() || o.size() != 3) fail("composition 'objects' must list three labels");
    if (!dg.is_array() || dg.size() != 2 || !dg[0].is_number_integer() || !dg[1].is_number_integer())
      fail("composition 'degrees' must be [|g|, |f|]");
    const ObjectId x = object_ref(c, o[0]), y = object_ref(c, o[1]), z = object_ref(c, o[2]);
    const int q = dg[0].get<int>(), p = dg[1].get<int>();
    const std::size_t n_out = c.dim(x, z, p + q), n_left = c.dim(y, z, q), n_right = c.dim(x, y, p);
    std::vector<CompEntry> entries;
    for (const auto& e : field(t, "entries")) {
      if (!e.is_array() || e.size() != 4) fail("composition entry must be [out, left, right, coef]");
      CompEntry ce{static_cast<std::uint32_t>(index_value(e[0], "entry index")),
                   static_cast<std::uint32_t>(index_value(e[1], "entry index")),
                   static_cast<std::uint32_t>(index_value(e[2], "entry index")), ring_from_json(e[3], rank)};
      if (ce.out >= n_out || ce.left >= n_left || ce.right >= n_right)
        fail("composition entry index out of range for " + c.label(x) + "->" + c.label(y) + "->" + c.label(z));
      entries.push_back(std::move(ce));
    }
    c.set_composition(x, y, z, q, p, std::move(entries));
  }

  const Json& units = field(j, "units");
  for (ObjectId x = 0; x < c.object_count(); ++x) {
    auto it = units.is_object() ? units.find(c.label(x)) : units.end();
    if (it == units.end()) fail("missing unit for '" + c.label(x) + "'");
    Vector u = coords_from_json(*it, rank);
    if (u.size() != c.dim(x, x, 0)) fail("unit of '" + c.label(x) + "' has the wrong length");
    c.set_unit(x, std::move(u));
  }
  return c;
}

Json simplex_to_json(const DgCategory& c, const NerveSimplex& sigma) {
  Json j;
  j["kind"] = "simplex";
  j["category"] = category_to_json(c);
  j["n"] = sigma.n;
  j["objects"] = labels_of(c, sigma.objects);
  j["cells"] = cells_to_json(sigma.cells, sigma.n);
  return j;
}

NerveSimplex simplex_from_json(const DgCategory& c, const Json& j) {
  NerveSimplex s;
  s.n = dimension_field(j);
  s.objects = object_list(c, field(j, "objects"), static_cast<std::size_t>(s.n + 1));
  const Json& cells = field(j, "cells");
  if (!cells.is_object()) fail("'cells' must map sequence keys to coordinates");
  for (const auto& [key, coords] : cells.items()) {
    const Mask m = key_in_range(key, s.n);
    s.cells[m] = cell_from_json(c, s.objects, m, coords);
  }
  for (Mask m : sequences(s.n))
    if (!s.cells.count(m)) fail("missing cell " + seq_key(m));
  return s;
}

Json horn_to_json(const DgCategory& c, const HornData& h) {
  Json j;
  j["kind"] = "horn";
  j["category"] = category_to_json(c);
  j["n"] = h.n;
  j["k"] = h.k;
  j["objects"] = labels_of(c, h.objects);
  j["missing"] = Json::array({seq_key(h.missing_face()), seq_key(h.top())});
  j["cells"] = cells_to_json(h.cells, h.n);
  return j;
}

HornData horn_from_json(const DgCategory& c, const Json& j) {
  HornData h;
  h.n = dimension_field(j);
  h.k = int_field(j, "k");
  if (h.n < 2) fail("horns need n >= 2");
  if (h.k < 0 || h.k > h.n) fail("horn index k out of range");
  h.objects = object_list(c, field(j, "objects"), static_cast<std::size_t>(h.n + 1));
  if (auto it = j.find("missing"); it != j.end()) {
    const Json expected = Json::array({seq_key(h.missing_face()), seq_key(h.top())});
    if (*it != expected) fail("'missing' does not match n and k");
  }
  const Json& cells = field(j, "cells");
  if (!cells.is_object()) fail("'cells' must map sequence keys to coordinates");
  for (const auto& [key, coords] : cells.items()) {
    const Mask m = key_in_range(key, h.n);
    if (m == h.missing_face() || m == h.top()) fail("horn carries the missing cell " + key);
    h.cells[m] = cell_from_json(c, h.objects, m, coords);
  }
  for (Mask m : sequences(h.n))
    if (m != h.missing_face() && m != h.top() && !h.cells.count(m)) fail("missing cell " + seq_key(m));
  return h;
}

Json filler_to_json(const DgCategory& c, const HornData& h, const Filler& f) {
  Json j;
  j["kind"] = "filler";
  j["category"] = category_to_json(c);
  j["n"] = f.n;
  j["k"] = f.k;
  j["objects"] = labels_of(c, h.objects);
  Json cells = Json::object();
  cells[seq_key(h.missing_face())] = coords_to_json(f.face.coords);
  cells[seq_key(h.top())] = coords_to_json(f.top.coords);
  j["cells"] = std::move(cells);
  j["simplex"] = {{"n", h.n}, {"objects", labels_of(c, h.objects)}, {"cells", cells_to_json(complete(h, f).cells, h.n)}};
  return j;
}

Filler filler_from_json(const DgCategory& c, const Json& j) {
  Filler f;
  f.n = dimension_field(j);
  f.k = int_field(j, "k");
  if (f.n < 2 || f.k < 0 || f.k > f.n) fail("filler n, k out of range");
  const auto objects = object_list(c, field(j, "objects"), static_cast<std::size_t>(f.n + 1));
  const Json& cells = field(j, "cells");
  const Mask face = full_mask(f.n) & ~(Mask{1} << f.k), top = full_mask(f.n);
  if (!cells.is_object() || cells.size() != 2) fail("filler 'cells' must hold exactly the two new cells");
  f.face = cell_from_json(c, objects, face, field(cells, seq_key(face).c_str()));
  f.top = cell_from_json(c, objects, top, field(cells, seq_key(top).c_str()));
  return f;
}

Json twisted_to_json(const DgCategory& base, const std::vector<MCElement>& objs) {
  Json j;
  j["kind"] = "twisted";
  j["category"] = category_to_json(base);
  Json list = Json::array();
  for (const auto& o : objs) list.push_back({{"object", base.label(o.object)}, {"eta", coords_to_json(o.eta.coords)}});
  j["mc_objects"] = std::move(list);
  return j;
}

std::vector<MCElement> mc_objects_from_json(const DgCategory& base, const Json& j) {
  const Json& list = field(j, "mc_objects");
  if (!list.is_array()) fail("'mc_objects' must be an array");
  std::vector<MCElement> out;
  for (const auto& o : list) {
    const ObjectId x = object_ref(base, field(o, "object"));
    Vector eta = coords_from_json(field(o, "eta"), base.rank());
    if (eta.size() != base.dim(x, x, 1)) fail("eta on '" + base.label(x) + "' has the wrong length");
    out.push_back({x, Morphism{x, x, 1, std::move(eta)}});
  }
  return out;
}

Json report_to_json(const Report& r) {
  Json a = Json::array();
  for (const auto& v : r) a.push_back({{"law", v.law}, {"where", v.where}});
  return a;
}

std::string document_kind(const Json& j) {
  const Json& k = field(j, "kind");
  if (!k.is_string()) fail("'kind' must be a string");
  const auto s = k.get<std::string>();
  if (s != "category" && s != "simplex" && s != "horn" && s != "filler" && s != "twisted")
    fail("unknown document kind '" + s + "'");
  return s;
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace dgn
