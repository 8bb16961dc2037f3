#include "dgnerve/cli.hpp"

#include "dgnerve/io.hpp"
#include "dgnerve/sweeps.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace dgn {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_document(buf.str());
  } catch (const DocumentError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string text_report(const std::string& what, const Report& r) {
  std::ostringstream s;
  if (r.empty()) {
    s << what << ": ok\n";
  } else {
    s << what << ": " << r.size() << " violation" << (r.size() == 1 ? "" : "s") << "\n";
    for (const auto& v : r) s << "  " << v.law << " at " << v.where << "\n";
  }
  return s.str();
}

Json base_report(const std::string& command) {
  Json j;
  j["kind"] = "report";
  j["command"] = command;
  return j;
}

struct Output {
  std::string text;
  Json json;
  int code = kExitPass;
};

Output check_report(const std::string& doc, Report r) {
  Output o;
  o.json = base_report("check");
  o.json["document"] = doc;
  o.json["ok"] = r.empty();
  o.json["violations"] = report_to_json(r);
  o.text = text_report(doc, r);
  o.code = r.empty() ? kExitPass : kExitMathFailure;
  return o;
}

Output cmd_check(const RunConfig& cfg) {
  const Json doc = read_document(cfg.inputs.at(0));
  const std::string kind = document_kind(doc);
  if (kind == "category") return check_report(kind, check_axioms(category_from_json(doc)));

  const DgCategory c = category_from_json(doc.at("category"));
  if (kind == "simplex") {
    const NerveSimplex s = simplex_from_json(c, doc);
    Report r = validate_simplex(c, s);
    if (cfg.star && r.empty()) r = validate_star(c, s);
    return check_report(kind, std::move(r));
  }
  if (kind == "horn") return check_report(kind, horn_compatibility(c, horn_from_json(c, doc)));
  if (kind == "filler") {
    if (!doc.contains("simplex")) throw DocumentError("filler without 'simplex'");
    const NerveSimplex s = simplex_from_json(c, doc.at("simplex"));
    const Filler f = filler_from_json(c, doc);
    Report r;
    if (!(s.cell(full_mask(f.n)) == f.top) || !(s.cell(full_mask(f.n) & ~(Mask{1} << f.k)) == f.face))
      r.push_back({"shape", "filler cells differ from the completed simplex"});
    if (r.empty()) r = validate_simplex(c, s);
    return check_report(kind, std::move(r));
  }
  // twisted
  std::vector<MCElement> objs = mc_objects_from_json(c, doc);
  try {
    const TwistedDgCategory t = twist(c, std::move(objs));
    return check_report(kind, check_axioms(t.category));
  } catch (const InvalidMCObject& e) {
    return check_report(kind, {{"maurer-cartan", e.what()}});
  }
}

HornData horn_input(const RunConfig& cfg, const Json& doc, const DgCategory& c) {
  const std::string kind = document_kind(doc);
  HornData h;
  if (kind == "horn") {
    h = horn_from_json(c, doc);
    if (cfg.k >= 0 && cfg.k != h.k) throw InputError("--k does not match the horn document");
  } else if (kind == "simplex") {
    if (cfg.k < 0) throw InputError("filling a simplex document needs --k");
    const NerveSimplex s = simplex_from_json(c, doc);
    if (s.n < 2 || cfg.k > s.n) throw InputError("--k out of range for this simplex");
    h = extract_horn(s, cfg.k);
  } else {
    throw InputError("expected a horn or simplex document, got '" + kind + "'");
  }
  if (cfg.n >= 0 && cfg.n != h.n) throw InputError("--n does not match the document");
  return h;
}

Output fill_failure(const std::string& command, const std::string& law, const std::string& what) {
  Output o;
  o.json = base_report(command);
  o.json["ok"] = false;
  o.json["violations"] = report_to_json({{law, what}});
  o.text = command + ": " + law + ": " + what + "\n";
  o.code = kExitMathFailure;
  return o;
}

std::string text_cells(const HornData& h, const Filler& f) {
  std::ostringstream s;
  s << "filled horn " << h.n << "," << h.k << "\n";
  for (const auto& [key, m] : {std::pair{h.missing_face(), &f.face}, std::pair{h.top(), &f.top}}) {
    s << "  " << seq_key(key) << ":";
    for (const auto& e : m->coords) s << " " << to_string(e);
    s << "\n";
  }
  return s.str();
}

Output cmd_fill(const RunConfig& cfg) {
  const Json doc = read_document(cfg.inputs.at(0));
  const DgCategory c = category_from_json(doc.at("category"));
  const HornData h = horn_input(cfg, doc, c);
  Filler f;
  try {
    f = fill_horn(c, h);
  } catch (const IncompatibleHorn& e) {
    return fill_failure("fill", "incompatible horn", e.what());
  } catch (const CannotFillOuterHorn& e) {
    return fill_failure("fill", "not an equivalence", e.what());
  }
  Output o;
  o.json = filler_to_json(c, h, f);
  o.text = text_cells(h, f);
  if (Report r = validate_simplex(c, complete(h, f)); !r.empty()) {
    o.text += text_report("completed simplex", r);
    o.code = kExitMathFailure;
  }
  return o;
}

Output cmd_lift(const RunConfig& cfg) {
  if (cfg.inputs.size() < 2) throw InputError("lift needs a horn document and a filler document");
  const Json hdoc = read_document(cfg.inputs[0]);
  const Json fdoc = read_document(cfg.inputs[1]);
  const DgCategory c = category_from_json(hdoc.at("category"));
  const HornData h = horn_input(cfg, hdoc, c);
  if (document_kind(fdoc) != "filler") throw InputError("second input must be a filler document");
  const DgCategory residue = reduce_category(c);
  if (!(category_from_json(fdoc.at("category")) == residue))
    throw InputError("filler is not over the residue category of the horn");
  const Filler f0 = filler_from_json(residue, fdoc);
  if (f0.n != h.n || f0.k != h.k) throw InputError("filler and horn have different n, k");
  LiftResult lr;
  try {
    lr = lift_filler(c, h, f0);
  } catch (const InvalidReduction& e) {
    return fill_failure("lift", "invalid reduction", e.what());
  } catch (const IncompatibleHorn& e) {
    return fill_failure("lift", "incompatible horn", e.what());
  } catch (const CannotFillOuterHorn& e) {
    return fill_failure("lift", "not an equivalence", e.what());
  }
  Output o;
  o.json = filler_to_json(c, h, lr.filler);
  o.json["correction"] = {{"phi", coords_to_json(lr.correction.phi.coords)},
                          {"psi", coords_to_json(lr.correction.psi.coords)},
                          {"eps_face", coords_to_json(lr.correction.eps_face.coords)},
                          {"eps_top", coords_to_json(lr.correction.eps_top.coords)}};
  o.text = text_cells(h, lr.filler);
  if (Report r = validate_simplex(c, complete(h, lr.filler)); !r.empty()) {
    o.text += text_report("lifted simplex", r);
    o.code = kExitMathFailure;
  }
  return o;
}

Output cmd_laws(const RunConfig& cfg) {
  const Json doc = read_document(cfg.inputs.at(0));
  if (document_kind(doc) != "category") throw InputError("laws needs a category document");
  const DgCategory c = category_from_json(doc);
  SignPattern signs = kPinnedPattern;
  if (cfg.sign_pattern >= 0) {
    if (cfg.sign_pattern > 15) throw InputError("--sign-pattern must be in 0..15");
    signs = SignPattern::from_code(cfg.sign_pattern);
  }
  const int max_n = cfg.n < 0 ? 4 : cfg.n;
  if (max_n < 1 || max_n > 6) throw InputError("--n must be in 1..6 for laws");

  Output o;
  const Report axioms = check_axioms(c);
  const LawReport rep = cfg.trials == 0 ? LawReport{cfg.seed, 0, {}, {}} : run_laws(c, cfg.trials, cfg.seed, max_n, signs);
  o.json = base_report("laws");
  o.json["seed"] = cfg.seed;
  o.json["trials"] = cfg.trials;
  o.json["signs"] = signs.describe();
  o.json["axioms"] = report_to_json(axioms);
  Json laws = Json::array();
  std::ostringstream text;
  text << "laws, seed " << cfg.seed << ", " << cfg.trials << " trials, " << signs.describe() << "\n";
  if (!axioms.empty()) text << text_report("category axioms", axioms);
  for (const auto& l : rep.laws) {
    Json e{{"law", l.law}, {"passed", l.passed}, {"failed", l.failed}};
    text << "  " << l.law << ": " << l.passed << " passed, " << l.failed << " failed";
    if (l.failed) {
      e["first_failing_trial"] = l.first_failing_trial;
      text << " (first failing trial " << l.first_failing_trial << ")";
    }
    text << "\n";
    laws.push_back(std::move(e));
  }
  Json failures = Json::array();
  for (const auto& f : rep.failures) {
    failures.push_back({{"law", f.stage}, {"trial", f.trial}, {"message", f.message}});
    text << "  failure: " << f.stage << ", trial " << f.trial << ": " << f.message << "\n";
  }
  o.json["laws"] = std::move(laws);
  o.json["failures"] = std::move(failures);
  o.json["ok"] = axioms.empty() && rep.ok();
  o.text = text.str();
  o.code = axioms.empty() && rep.ok() ? kExitPass : kExitMathFailure;
  return o;
}

Output cmd_gp(const RunConfig& cfg) {
  const Json doc = read_document(cfg.inputs.at(0));
  if (document_kind(doc) != "category") throw InputError("gp needs a category document");
  const DgCategory c = category_from_json(doc);
  if (cfg.n < 0 || cfg.k < 0) throw InputError("gp needs --n and --k");
  GpReport rep;
  try {
    rep = check_gp(c, cfg.n, cfg.k, cfg.trials, cfg.seed);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  Output o;
  o.json = base_report("gp");
  o.json["n"] = rep.n;
  o.json["k"] = rep.k;
  o.json["seed"] = rep.seed;
  o.json["trials"] = rep.trials;
  o.json["filled"] = rep.filled;
  o.json["lifted"] = rep.lifted;
  o.json["plain_inner"] = rep.plain_inner;
  o.json["inner_witness_calls"] = rep.inner_witness_calls;
  Json failures = Json::array();
  std::ostringstream text;
  text << "gp " << rep.n << "," << rep.k << ", seed " << rep.seed << ": " << rep.filled << "/" << rep.trials
       << " filled, " << rep.lifted << " lifted";
  if (0 < rep.k && rep.k < rep.n)
    text << ", " << rep.plain_inner << " plain inner, " << rep.inner_witness_calls << " inner witness calls";
  text << "\n";
  for (const auto& f : rep.failures) {
    failures.push_back({{"stage", f.stage}, {"trial", f.trial}, {"message", f.message}});
    text << "  failure: " << f.stage << ", trial " << f.trial << ": " << f.message << "\n";
  }
  o.json["failures"] = std::move(failures);
  o.json["ok"] = rep.ok();
  o.text = text.str();
  o.code = rep.ok() ? kExitPass : kExitMathFailure;
  return o;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Output o;
  try {
    if (cfg.command == "check") o = cmd_check(cfg);
    else if (cfg.command == "fill") o = cmd_fill(cfg);
    else if (cfg.command == "lift") o = cmd_lift(cfg);
    else if (cfg.command == "laws") o = cmd_laws(cfg);
    else if (cfg.command == "gp") o = cmd_gp(cfg);
    else throw InputError("unknown command '" + cfg.command + "'");
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const DocumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  std::string body = cfg.format == "text" ? o.text : o.json.dump(2) + "\n";
  if (cfg.out.empty()) {
    out << body;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return kExitInputError;
    }
    f << body;
  }
  return o.code;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherent nerve of finite dg-categories: horn filling and square-zero lifting"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Seed for randomized sweeps");
    sub->add_option("--trials", cfg.trials, "Number of trials");
    sub->add_option("--n", cfg.n, "Simplex dimension");
    sub->add_option("--k", cfg.k, "Horn index");
    sub->add_option("--out", cfg.out, "Write the report here instead of stdout");
    sub->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  };

  auto* check = app.add_subcommand("check", "Validate a category, simplex, horn, filler or twisted document");
  check->add_option("input", cfg.inputs, "Document")->required()->expected(1);
  check->add_flag("--star", cfg.star, "Also require every edge of a simplex to be an equivalence");
  common(check);

  auto* fill = app.add_subcommand("fill", "Fill a horn (or the k-horn of a simplex)");
  fill->add_option("input", cfg.inputs, "Horn or simplex document")->required()->expected(1);
  common(fill);

  auto* lift = app.add_subcommand("lift", "Lift a filler over B/I to a filler over B");
  lift->add_option("inputs", cfg.inputs, "Horn over B, then filler over B/I")->required()->expected(2);
  common(lift);

  auto* laws = app.add_subcommand("laws", "Run the identity battery on a category");
  laws->add_option("input", cfg.inputs, "Category document")->required()->expected(1);
  laws->add_option("--sign-pattern", cfg.sign_pattern)->group("");
  common(laws);

  auto* gp = app.add_subcommand("gp", "Randomized horn filling and lifting sweep");
  gp->add_option("input", cfg.inputs, "Category document")->required()->expected(1);
  common(gp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run_command(cfg, out, err);
}

}  // namespace dgn
