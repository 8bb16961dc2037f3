#include "support.hpp"

#include "dgnerve/cli.hpp"
#include "dgnerve/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/wait.h>

using namespace test;
namespace fs = std::filesystem;

namespace {

const std::map<std::string, Json>& documents() {
  static const std::map<std::string, Json> docs = [] {
    std::map<std::string, Json> m;
    for (auto& [name, j] : fixture_documents(1)) m.emplace(name, j);
    return m;
  }();
  return docs;
}

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("dgnerve-cli-" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }
  std::string write(const std::string& name, const Json& j) const { return write(name, j.dump()); }
};

const Scratch& scratch() {
  static const Scratch s;
  return s;
}

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dgnerve");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Runs the installed binary and returns its exit status.
int run_binary(const std::string& args) {
  const std::string cmd = std::string("\"") + DGNERVE_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string doc_path(const std::string& name) { return scratch().write(name + ".json", documents().at(name)); }

}  // namespace

TEST_CASE("documents survive a parse/serialize round trip") {
  for (const auto& [name, j] : documents()) {
    CAPTURE(name);
    const Json back = parse_document(j.dump(2));
    CHECK(back == j);
    const std::string kind = document_kind(j);
    if (kind == "category") {
      CHECK(category_to_json(category_from_json(j)) == j);
      continue;
    }
    const DgCategory c = category_from_json(j.at("category"));
    if (kind == "simplex") CHECK(simplex_to_json(c, simplex_from_json(c, j)) == j);
    if (kind == "horn") CHECK(horn_to_json(c, horn_from_json(c, j)) == j);
    if (kind == "twisted") CHECK(twisted_to_json(c, mc_objects_from_json(c, j)) == j);
    if (kind == "filler") {
      const Filler f = filler_from_json(c, j);
      const HornData h = extract_horn(simplex_from_json(c, j.at("simplex")), f.k);
      CHECK(filler_to_json(c, h, f) == j);
    }
  }
}

TEST_CASE("ring elements in JSON") {
  CHECK(ring_to_json(re(3)) == Json("3/1"));
  CHECK(ring_to_json(re(3, {0, 0})) == Json("3/1"));
  CHECK(ring_to_json(re(3, {1, 0})).dump() == R"(["3/1",["1/1","0/1"]])");
  CHECK(ring_from_json(Json("-6/4"), 1) == RingElement(ratio(-3, 2), {Rational(0)}));
  CHECK_THROWS_AS(ring_from_json(Json::array({"1/1", Json::array({"1/1"})}), 2), DocumentError);
  CHECK_THROWS_AS(parse_document("{\"kind\": "), DocumentError);
  CHECK_THROWS_AS(document_kind(Json{{"kind", "nonsense"}}), DocumentError);
}

TEST_CASE("check exit codes") {
  for (const auto& [name, j] : documents()) {
    CAPTURE(name);
    CHECK(run({"check", doc_path(name)}).code == kExitPass);
  }
  Json broken = documents().at("category-complexes-a");
  Json& entry = broken["differentials"][0]["matrix"][0][0];
  entry = to_string(parse_rational(entry.get<std::string>()) + Rational(1));
  const Run r = run({"check", scratch().write("broken.json", broken)});
  CHECK(r.code == kExitMathFailure);
  CHECK(r.out.find("\"ok\": false") != std::string::npos);
  CHECK(run({"check", scratch().write("malformed.json", std::string("{\"kind\": \"category\", "))}).code ==
        kExitInputError);
  CHECK(run({"check", (scratch().dir / "missing.json").string()}).code == kExitInputError);
  Json wrong_shape = documents().at("category-exterior");
  wrong_shape["homs"][0]["ranks"]["0"] = 7;
  CHECK(run({"check", scratch().write("shape.json", wrong_shape)}).code == kExitInputError);
}

TEST_CASE("fill") {
  const Run ok = run({"fill", doc_path("horn-3-1")});
  CHECK(ok.code == kExitPass);
  CHECK(parse_document(ok.out) == documents().at("filler-3-1"));
  CHECK(run({"fill", doc_path("simplex-3"), "--k", "0"}).code == kExitPass);
  CHECK(run({"fill", doc_path("simplex-3")}).code == kExitInputError);
  const Run bad = run({"fill", doc_path("horn-zero-edge-2-0"), "--format", "text"});
  CHECK(bad.code == kExitMathFailure);
  CHECK(bad.out.find("0,1") != std::string::npos);
  CHECK(run({"fill", doc_path("category-exterior")}).code == kExitInputError);
}

TEST_CASE("lift") {
  for (const std::string k : {"0", "2"}) {
    const Run r = run({"lift", doc_path("horn-dual-3-" + k), doc_path("filler-mod-i-3-" + k)});
    CHECK(r.code == kExitPass);
    const Json out = parse_document(r.out);
    CHECK(out.at("kind") == "filler");
    CHECK(out.contains("correction"));
  }
  Json bad = documents().at("filler-mod-i-3-0");
  Json& cells = bad["cells"];
  Json& face = cells.begin().value();
  REQUIRE_FALSE(face.empty());
  face[0] = to_string(parse_rational(face[0].get<std::string>()) + Rational(17));
  const Run r = run({"lift", doc_path("horn-dual-3-0"), scratch().write("bad-filler.json", bad)});
  CHECK(r.code == kExitMathFailure);
  CHECK(r.out.find("invalid reduction") != std::string::npos);
  // A filler over the wrong category, or a horn in place of the filler, is an input error.
  Json other = documents().at("filler-mod-i-3-0");
  other["category"] = documents().at("category-complexes-b");
  CHECK(run({"lift", doc_path("horn-dual-3-0"), scratch().write("other.json", other)}).code == kExitInputError);
  CHECK(run({"lift", doc_path("horn-dual-3-0"), doc_path("horn-dual-3-0")}).code == kExitInputError);
}

TEST_CASE("laws and gp") {
  const std::string cat = doc_path("category-complexes-a");
  CHECK(run({"laws", cat, "--trials", "0"}).code == kExitPass);
  CHECK(run({"laws", cat, "--trials", "3", "--n", "3"}).code == kExitPass);
  const Run wrong = run({"laws", cat, "--trials", "3", "--n", "3", "--sign-pattern", "1"});
  CHECK(wrong.code == kExitMathFailure);
  CHECK(parse_document(wrong.out).at("failures").size() > 0);
  CHECK(run({"laws", cat, "--sign-pattern", "16"}).code == kExitInputError);
  CHECK(run({"gp", cat, "--n", "3", "--k", "1", "--trials", "3"}).code == kExitPass);
  CHECK(run({"gp", cat, "--n", "1", "--k", "0"}).code == kExitInputError);
  CHECK(run({"gp", cat, "--n", "3"}).code == kExitInputError);
  CHECK(run({"gp", cat, "--n", "3", "--k", "1", "--format", "yaml"}).code == kExitInputError);
  CHECK(run({"bogus"}).code == kExitInputError);
}

TEST_CASE("same seed, same output") {
  const std::string cat = doc_path("category-twisted");
  const std::vector<std::string> gp{"gp", cat, "--n", "3", "--k", "0", "--trials", "4", "--seed", "12"};
  CHECK(run(gp).out == run(gp).out);
  const std::vector<std::string> laws{"laws", cat, "--trials", "2", "--n", "2", "--seed", "5"};
  CHECK(run(laws).out == run(laws).out);
  const fs::path out = scratch().dir / "gp-out.json";
  auto with_out = gp;
  with_out.insert(with_out.end(), {"--out", out.string()});
  CHECK(run(with_out).code == kExitPass);
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == run(gp).out);
}

TEST_CASE("the binary reports exit codes") {
  CHECK(run_binary("check \"" + doc_path("category-exterior") + "\"") == 0);
  CHECK(run_binary("fill \"" + doc_path("horn-zero-edge-2-0") + "\"") == 1);
  CHECK(run_binary("check \"" + scratch().write("junk.json", std::string("[1, 2")) + "\"") == 2);
  CHECK(run_binary("") == 2);
}
