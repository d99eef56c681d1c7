#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qcox/cli.hpp"
#include "qcox/json_io.hpp"
#include "qcox/presentation.hpp"
#include "qcox/quiver.hpp"

using namespace qcox;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"qcox"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& rel) { return std::string(DATA_DIR) + "/" + rel; }

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const json& j)
      : path((std::filesystem::temp_directory_path() / name).string()) {
    save_json_file(path, j);
  }
  ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("mutate reverses the A2 arrow and is an involution") {
  CliRun r = run({"mutate", data("quivers/a2.json"), "-k", "2", "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out == "vertices 2\narrow 2 1 1\n");

  CliRun once = run({"mutate", data("quivers/a2.json"), "-k", "2"});
  TempFile mid("qcox_cli_a2_mut.json", json::parse(once.out));
  CliRun twice = run({"mutate", mid.path, "-k", "2"});
  CHECK(twice.code == 0);
  CHECK(twice.out == slurp(data("quivers/a2.json")));
}

TEST_CASE("mutate rejects bad vertex and wrong input type") {
  CliRun bad = run({"mutate", data("quivers/a2.json"), "-k", "5"});
  CHECK(bad.code == 3);
  CHECK(bad.err.find("out of range") != std::string::npos);
  CHECK(run({"mutate", data("triangulations/tetrahedron.json"), "-k", "1"}).code == 3);
  CHECK(run({"mutate", "/no/such/file.json", "-k", "1"}).code == 3);
}

TEST_CASE("quiver-of emits the annotated quiver as JSON") {
  CliRun r = run({"quiver-of", data("triangulations/punctured_annulus.json")});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("n") == 5);
  CHECK(j.at("blocks").empty());
  Quiver got = quiver_from_json(j);
  Quiver expected = Quiver::from_arrows(
      5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}, {0, 4, 1}, {2, 4, 1}});
  CHECK(is_isomorphic(got, expected));
}

TEST_CASE("present matches the library text form and warns below four features") {
  CliRun r = run({"present", data("quivers/a3.json"), "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out == to_text(presentation_of(quiver_from_json(load_json_file(data("quivers/a3.json"))))));
  CHECK(r.err.empty());

  CliRun warned = run({"present", data("triangulations/punctured_annulus.json")});
  CHECK(warned.code == 0);
  CHECK(warned.err.find("fewer than 4") != std::string::npos);
  json j = json::parse(warned.out);
  CHECK(j.at("feature_count") == 3);
  CHECK(j.at("gens") == 5);
  CHECK(j.at("relators").size() == 11);

  CliRun closed = run({"present", data("triangulations/tetrahedron.json")});
  CHECK(closed.code == 0);
  CHECK(closed.err.empty());
  json tetra = json::parse(closed.out);
  CHECK(tetra.at("feature_count") == 4);
  // 15 pair relations, and a cycle relation for each of the 8 chordless
  // oriented 3-cycles: one per triangle plus one around each puncture.
  int pairs = 0, cycles = 0;
  for (const json& rel : tetra.at("relators"))
    (rel.at("kind") == "pair" ? pairs : cycles) += 1;
  CHECK(pairs == 15);
  CHECK(cycles == 8);
}

TEST_CASE("present refuses a double arrow") {
  CliRun r = run({"present", data("triangulations/annulus_two_marks.json")});
  CHECK(r.code == 3);
  CHECK(r.err.find("multiplicity 2") != std::string::npos);
}

TEST_CASE("flip returns the arc map and rejects bad handles") {
  CliRun r = run({"flip", data("triangulations/tetrahedron.json"), "-a", "1"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("arc_map").size() == 6);
  CHECK(j.contains("triangulation"));

  CHECK(run({"flip", data("triangulations/annulus_two_marks.json"), "-a", "3"}).code == 3);

  TempFile monogon("qcox_cli_monogon.json", json{{"triangles", 1}, {"glue", {{0, 1}}}});
  CliRun folded = run({"flip", monogon.path, "-a", "1"});
  CHECK(folded.code == 3);
  CHECK(folded.err.find("self-folded") != std::string::npos);
}

TEST_CASE("flipgraph explores the sphere with four punctures") {
  CliRun r = run({"flipgraph", data("triangulations/tetrahedron.json"), "--target",
                  data("targets/s3.json")});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("exhausted") == false);
  CHECK(j.at("graph").at("nodes").size() == 2);
  const json& inv = j.at("invariants");
  REQUIRE(inv.size() == 2);
  for (const json& e : inv) {
    CHECK(e.at("presentable") == true);
    CHECK(e.at("f2_rank") == inv[0].at("f2_rank"));
    CHECK(e.at("hom_counts") == inv[0].at("hom_counts"));
  }

  CliRun tight = run({"flipgraph", data("triangulations/tetrahedron.json"), "--budget-nodes", "1"});
  CHECK(tight.code == 2);
  CHECK(json::parse(tight.out).at("exhausted") == true);
}

TEST_CASE("flipgraph on the rigid fans is a singleton") {
  for (const char* name : {"triangulations/genus2_three.json", "triangulations/torus_three.json"}) {
    CliRun r = run({"flipgraph", data(name)});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("graph").at("nodes").size() == 1);
    CHECK(j.at("graph").at("edges").empty());
  }
}

TEST_CASE("flipgraph dot output names the graph") {
  CliRun r = run({"flipgraph", data("triangulations/tetrahedron.json"), "--format", "dot"});
  CHECK(r.code == 0);
  CHECK(r.out.find("digraph") != std::string::npos);
}

TEST_CASE("associate reports removals and the sentinel") {
  CliRun r = run({"associate", data("triangulations/annulus_two_marks.json")});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("removals").size() == 1);
  CHECK(j.at("sentinel") == false);
  CHECK(j.at("signature").at("punctures") == 1);

  TempFile digon("qcox_cli_digon.json", json{{"triangles", 2}, {"glue", {{0, 3}, {1, 5}}}});
  CliRun stuck = run({"associate", digon.path});
  CHECK(stuck.code == 0);
  json s = json::parse(stuck.out);
  CHECK(s.at("sentinel") == true);
  CHECK(s.at("removals").empty());
}

TEST_CASE("reglue handles the hexagon and rejects invalid pairings") {
  CliRun r = run({"reglue", data("gluings/hexagon_opposite.json")});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("all_opposite") == true);
  CHECK(j.at("regluings").size() == 1);

  CliRun c = run({"reglue", data("gluings/hexagon_opposite.json"), "--closure"});
  CHECK(c.code == 0);
  json cj = json::parse(c.out);
  CHECK(cj.at("closure_size") == 1);
  CHECK(cj.at("reaches_all_opposite") == true);

  TempFile invalid("qcox_cli_badglue.json",
                   json{{"g", 1}, {"pairing", {{0, 1}, {2, 3}, {4, 5}}}});
  CHECK(run({"reglue", invalid.path}).code == 3);
}

TEST_CASE("todd-coxeter computes orders and subgroup indices") {
  CliRun r = run({"todd-coxeter", data("quivers/a3.json")});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("status") == "complete");
  CHECK(j.at("order") == 24);

  CliRun sub = run({"todd-coxeter", data("quivers/a3.json"), "--subgroup", "1", "--subgroup", "2"});
  CHECK(sub.code == 0);
  CHECK(json::parse(sub.out).at("index") == 4);

  CliRun d4 = run({"todd-coxeter", data("quivers/d4.json")});
  CHECK(d4.code == 0);
  CHECK(json::parse(d4.out).at("order") == 192);

  TempFile star5("qcox_cli_star5.json",
                 to_json(Quiver::from_arrows(5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}})));
  CliRun infinite = run({"todd-coxeter", star5.path, "--budget-cosets", "1000"});
  CHECK(infinite.code == 2);
  CHECK(json::parse(infinite.out).at("status") == "exhausted");

  CHECK(run({"todd-coxeter", data("quivers/a3.json"), "--subgroup", "7"}).code == 3);
}

TEST_CASE("homcount counts maps into the shipped tables") {
  CliRun r = run({"homcount", data("quivers/a2.json"), "--target", data("targets/s3.json")});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("count") == 10);
  CHECK(j.at("target") == "S3");
  CHECK(j.at("target_order") == 6);
  CHECK(j.at("f2_rank") == 1);
}

namespace {

// Minimal structural validation against the shipped schema: required keys
// present, no extra keys where the schema forbids them, enum respected.
void check_against_schema(const json& report, const json& schema) {
  std::set<std::string> allowed;
  for (auto it = schema.at("properties").begin(); it != schema.at("properties").end(); ++it)
    allowed.insert(it.key());
  for (const json& k : schema.at("required"))
    CHECK(report.contains(k.get<std::string>()));
  for (auto it = report.begin(); it != report.end(); ++it)
    CHECK(allowed.count(it.key()) == 1);

  const json& rel_schema = schema.at("properties").at("relators").at("items");
  std::set<std::string> rel_allowed;
  for (auto it = rel_schema.at("properties").begin(); it != rel_schema.at("properties").end(); ++it)
    rel_allowed.insert(it.key());
  std::set<std::string> kinds;
  for (const json& k : rel_schema.at("properties").at("kind").at("enum"))
    kinds.insert(k.get<std::string>());
  for (const json& rel : report.at("relators")) {
    for (const json& k : rel_schema.at("required")) CHECK(rel.contains(k.get<std::string>()));
    for (auto it = rel.begin(); it != rel.end(); ++it) CHECK(rel_allowed.count(it.key()) == 1);
    CHECK(kinds.count(rel.at("kind").get<std::string>()) == 1);
  }
  CHECK(report.at("kernel_element").contains("letters"));
  CHECK(report.at("kernel_element").contains("trivial"));
}

}  // namespace

TEST_CASE("example-d4 passes clean and fails corrupted, matching the schema") {
  json schema = load_json_file(data("schemas/example_d4_report.schema.json"));

  CliRun good = run({"example-d4"});
  CHECK(good.code == 0);
  json g = json::parse(good.out);
  check_against_schema(g, schema);
  CHECK(g.at("ok") == true);
  CHECK(g.at("corrupted") == false);
  CHECK(g.at("generators") == 5);
  CHECK(g.at("relators").size() == 11);
  CHECK(g.at("kernel_element").at("trivial") == true);

  CliRun bad = run({"example-d4", "--corrupt"});
  CHECK(bad.code == 1);
  json b = json::parse(bad.out);
  check_against_schema(b, schema);
  CHECK(b.at("ok") == false);
  bool some_relator_failed = false;
  for (const json& rel : b.at("relators"))
    if (rel.at("ok") == false) some_relator_failed = true;
  CHECK(some_relator_failed);
}

TEST_CASE("counterexample partitions the decagon gluings into two rigid classes") {
  CliRun r = run({"counterexample"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("pairings_scanned") == 945);
  CHECK(j.at("valid_gluings") == 8);
  CHECK(j.at("classes") == 2);
  CHECK(j.at("all_rigid") == true);
  CHECK(j.at("ok") == true);
  for (const json& c : j.at("class_details")) {
    CHECK(c.at("rigid") == true);
    CHECK(c.at("signature").at("genus") == 2);
    CHECK(c.at("signature").at("punctures") == 3);
  }
}

TEST_CASE("counterexample genus 1 finds the single hexagon class") {
  CliRun r = run({"counterexample", "--genus", "1"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("valid_gluings") == 1);
  CHECK(j.at("classes") == 1);
  CHECK(j.at("all_rigid") == true);
}

TEST_CASE("counterexample single-gluing analysis") {
  CliRun r = run({"counterexample", "--gluing", data("gluings/decagon_opposite.json")});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("all_opposite") == true);
  CHECK(j.at("rigid") == true);
  CHECK(j.at("signature").at("genus") == 2);
}

TEST_CASE("outputs are deterministic and --out writes the same bytes") {
  CliRun a = run({"flipgraph", data("triangulations/tetrahedron.json")});
  CliRun b = run({"flipgraph", data("triangulations/tetrahedron.json")});
  CHECK(a.out == b.out);

  std::string path = (std::filesystem::temp_directory_path() / "qcox_cli_out.json").string();
  CliRun f = run({"quiver-of", data("triangulations/tetrahedron.json"), "--out", path});
  CHECK(f.code == 0);
  CHECK(f.out.empty());
  CliRun s = run({"quiver-of", data("triangulations/tetrahedron.json")});
  CHECK(slurp(path) == s.out);
  std::remove(path.c_str());
}

TEST_CASE("usage errors exit with the input-error code") {
  CHECK(run({}).code == 3);
  CHECK(run({"no-such-command"}).code == 3);
  CHECK(run({"mutate", data("quivers/a2.json")}).code == 3);  // missing -k
  CliRun help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("Usage") != std::string::npos);
}
