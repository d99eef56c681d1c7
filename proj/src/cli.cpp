#include "qcox/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qcox/errors.hpp"
#include "qcox/groupcheck.hpp"
#include "qcox/json_io.hpp"
#include "qcox/presentation.hpp"
#include "qcox/quiver.hpp"
#include "qcox/surface.hpp"
#include "qcox/word.hpp"

namespace qcox {
namespace {

constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kExhausted = 2;
constexpr int kBadInput = 3;

// Command-line indices and text output are 1-based; JSON files stay 0-based.

void deliver(const std::string& body, const std::string& out_path, std::ostream& out) {
  std::string text = body;
  if (text.empty() || text.back() != '\n') text.push_back('\n');
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open output file '" + out_path + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2); }

int to_zero_based(int k, int n, const std::string& what) {
  if (k < 1 || k > n)
    throw InvalidInput(what + " index " + std::to_string(k) + " out of range 1.." +
                       std::to_string(n));
  return k - 1;
}

Word parse_word(const std::string& text, int ngens) {
  Word w;
  std::istringstream in(text);
  long long v = 0;
  while (in >> v) {
    if (v < 1 || v > ngens)
      throw InvalidInput("letter " + std::to_string(v) + " out of range 1.." +
                         std::to_string(ngens) + " in word '" + text + "'");
    w.push_back(static_cast<int>(v) - 1);
  }
  if (!in.eof()) throw InvalidInput("cannot parse word '" + text + "'");
  return w;
}

json letters_json(const Word& w) {
  json a = json::array();
  for (int x : w) a.push_back(x + 1);
  return a;
}

std::string kind_label(RelatorKind k) {
  switch (k) {
    case RelatorKind::CoxeterPair:
      return "pair";
    case RelatorKind::ChordlessCycle:
      return "cycle";
    case RelatorKind::BlockCycle:
      return "block-cycle";
  }
  return "?";
}

std::string hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string h;
  h.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    h.push_back(digits[c >> 4]);
    h.push_back(digits[c & 15]);
  }
  return h;
}

json load_input(const std::string& path) { return load_json_file(path); }

bool looks_like_triangulation(const json& j) { return j.contains("glue") || j.contains("triangles"); }
bool looks_like_polygon(const json& j) { return j.contains("pairing"); }
bool looks_like_presentation(const json& j) { return j.contains("relators") && j.contains("gens"); }
bool looks_like_target(const json& j) { return j.contains("mul"); }
bool looks_like_annotated(const json& j) { return j.contains("blocks") || j.contains("weighted"); }

AnnotatedQuiver load_annotated(const json& j) {
  if (looks_like_annotated(j)) return annotated_from_json(j);
  return AnnotatedQuiver{quiver_from_json(j), {}};
}

// The presented group is an invariant of the surface only when punctures plus
// boundary components total at least four; below that, different
// triangulations of one surface can present different groups.
std::string low_feature_warning(int features) {
  return "surface has " + std::to_string(features) +
         " punctures plus boundary components; with fewer than 4 the group may depend on "
         "the choice of triangulation";
}

Presentation presentation_from_any(const json& j) {
  if (looks_like_target(j)) throw InvalidInput("expected a quiver, triangulation or presentation, got a group table");
  if (looks_like_polygon(j)) {
    PolygonGluing pg = polygon_from_json(j);
    validate_structure(pg);
    if (!polygon_gluing_valid(pg)) throw InvalidInput("side pairing is not a valid gluing");
    Triangulation t = realize_polygon_gluing(pg);
    Presentation p = presentation_of(quiver_of(t));
    SurfaceSignature s = t.signature();
    p.feature_count = s.punctures + s.boundary_components;
    if (p.feature_count < 4) p.warning = low_feature_warning(p.feature_count);
    return p;
  }
  if (looks_like_triangulation(j)) {
    Triangulation t = triangulation_from_json(j);
    Presentation p = presentation_of(quiver_of(t));
    SurfaceSignature s = t.signature();
    p.feature_count = s.punctures + s.boundary_components;
    if (p.feature_count < 4) p.warning = low_feature_warning(p.feature_count);
    return p;
  }
  if (looks_like_presentation(j)) return presentation_from_json(j);
  return presentation_of(load_annotated(j));
}

std::string quiver_text(const Quiver& q) {
  std::ostringstream s;
  s << "vertices " << q.size() << "\n";
  for (const auto& a : q.arrows()) s << "arrow " << a[0] + 1 << " " << a[1] + 1 << " " << a[2] << "\n";
  return s.str();
}

std::string annotated_text(const AnnotatedQuiver& aq) {
  std::ostringstream s;
  s << "vertices " << aq.size() << "\n";
  s << "weighted " << (aq.weighted() ? "yes" : "no") << "\n";
  auto arrows = aq.weighted() ? aq.diagram().arrows() : aq.quiver().arrows();
  for (const auto& a : arrows) s << "arrow " << a[0] + 1 << " " << a[1] + 1 << " " << a[2] << "\n";
  for (const BlockAnnotation& b : aq.blocks) {
    s << "block " << (b.kind == BlockKind::IV ? "IV" : "IV2") << " from " << b.from + 1 << " to "
      << b.to + 1 << " extra";
    for (int e : b.extra)
      if (e >= 0) s << " " << e + 1;
    s << "\n";
  }
  return s.str();
}

std::string signature_text(const SurfaceSignature& s) {
  std::ostringstream o;
  o << "genus " << s.genus << ", punctures " << s.punctures << ", boundary components "
    << s.boundary_components << ", boundary marks " << s.boundary_marks;
  return o.str();
}

struct CommonOpts {
  std::string input;
  std::string format = "json";
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o, const std::vector<std::string>& formats = {"json", "text"}) {
  cmd->add_option("input", o.input, "input JSON file")->required();
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  cmd->add_option("--out", o.out_path, "write the report to this file instead of stdout");
}

// ---------------------------------------------------------------- mutate

int cmd_mutate(const CommonOpts& o, int k, std::ostream& out) {
  json j = load_input(o.input);
  if (looks_like_annotated(j) || looks_like_triangulation(j) || looks_like_polygon(j) ||
      looks_like_presentation(j) || looks_like_target(j))
    throw InvalidInput("mutate expects a plain quiver file");
  Quiver q = quiver_from_json(j);
  Quiver r = mutate(q, to_zero_based(k, q.size(), "vertex"));
  deliver(o.format == "text" ? quiver_text(r) : dump(to_json(r)), o.out_path, out);
  return kOk;
}

// ------------------------------------------------------------- quiver-of

int cmd_quiver_of(const CommonOpts& o, std::ostream& out) {
  Triangulation t = triangulation_from_json(load_input(o.input));
  AnnotatedQuiver aq = quiver_of(t);
  deliver(o.format == "text" ? annotated_text(aq) : dump(to_json(aq)), o.out_path, out);
  return kOk;
}

// --------------------------------------------------------------- present

int cmd_present(const CommonOpts& o, std::ostream& out, std::ostream& err) {
  Presentation p = presentation_from_any(load_input(o.input));
  if (!p.warning.empty()) err << "note: " << p.warning << "\n";
  deliver(o.format == "text" ? to_text(p) : dump(to_json(p)), o.out_path, out);
  return kOk;
}

// ------------------------------------------------------------------ flip

int cmd_flip(const CommonOpts& o, int arc, std::ostream& out) {
  Triangulation t = triangulation_from_json(load_input(o.input));
  int handles = t.arc_count() + t.boundary_segment_count();
  FlipResult fr = flip_detailed(t, to_zero_based(arc, handles, "arc"));
  if (o.format == "text") {
    std::ostringstream s;
    s << "flipped arc " << arc << "\n";
    for (size_t i = 0; i < fr.arc_map.size(); ++i)
      s << "arc " << i + 1 << " -> " << fr.arc_map[i] + 1 << "\n";
    s << "signature: " << signature_text(fr.triangulation.signature()) << "\n";
    deliver(s.str(), o.out_path, out);
  } else {
    json m = json::array();
    for (int x : fr.arc_map) m.push_back(x);
    deliver(dump(json{{"arc_map", m}, {"triangulation", to_json(fr.triangulation)}}), o.out_path,
            out);
  }
  return kOk;
}

// ------------------------------------------------------------- flipgraph

struct FlipgraphOpts {
  CommonOpts common;
  std::uint64_t budget_nodes = 10000;
  std::uint64_t budget_cosets = 2000;
  std::vector<std::string> target_paths;
};

int cmd_flipgraph(const FlipgraphOpts& o, std::ostream& out) {
  Triangulation t = triangulation_from_json(load_input(o.common.input));
  FlipGraph fg = loop_free_flip_graph(t, static_cast<size_t>(o.budget_nodes));

  std::vector<FiniteGroupTarget> targets;
  for (const std::string& path : o.target_paths) targets.push_back(target_from_json(load_input(path)));

  struct NodeRow {
    bool presentable = true;
    InvariantReport report;
  };
  std::vector<NodeRow> rows;
  rows.reserve(fg.nodes.size());
  for (const Triangulation& node : fg.nodes) {
    NodeRow row;
    try {
      Presentation p = presentation_of(quiver_of(node));
      row.report = invariant_report(p, targets, static_cast<size_t>(o.budget_cosets));
    } catch (const DoubleArrowError&) {
      row.presentable = false;
    }
    rows.push_back(std::move(row));
  }

  if (o.common.format == "dot") {
    deliver(to_dot(fg), o.common.out_path, out);
  } else if (o.common.format == "text") {
    std::ostringstream s;
    s << "nodes " << fg.nodes.size() << "\n";
    s << "edges " << fg.edges.size() << "\n";
    s << "exhausted " << (fg.exhausted ? "yes" : "no") << "\n";
    for (size_t i = 0; i < rows.size(); ++i) {
      s << "node " << i + 1;
      if (!rows[i].presentable) {
        s << " double arrow, no presentation\n";
        continue;
      }
      const InvariantReport& r = rows[i].report;
      s << " f2_rank " << r.f2_rank;
      if (r.order) s << " order " << *r.order;
      for (const auto& [name, count] : r.hom_counts) s << " hom(" << name << ") " << count;
      s << "\n";
    }
    deliver(s.str(), o.common.out_path, out);
  } else {
    json inv = json::array();
    for (size_t i = 0; i < rows.size(); ++i) {
      json e{{"node", i}};
      if (!rows[i].presentable) {
        e["presentable"] = false;
      } else {
        const InvariantReport& r = rows[i].report;
        e["presentable"] = true;
        e["f2_rank"] = r.f2_rank;
        if (r.order)
          e["order"] = *r.order;
        else
          e["order"] = nullptr;
        json hc = json::object();
        for (const auto& [name, count] : r.hom_counts) hc[name] = count;
        e["hom_counts"] = hc;
      }
      inv.push_back(std::move(e));
    }
    deliver(dump(json{{"exhausted", fg.exhausted},
                      {"graph", to_json(fg)},
                      {"invariants", inv}}),
            o.common.out_path, out);
  }
  return fg.exhausted ? kExhausted : kOk;
}

// ------------------------------------------------------------- associate

int cmd_associate(const CommonOpts& o, std::ostream& out) {
  Triangulation t = triangulation_from_json(load_input(o.input));
  AssociateResult r = associate_triangulation(t);
  if (o.format == "text") {
    std::ostringstream s;
    s << "removals " << r.record.removals.size() << "\n";
    for (size_t i = 0; i < r.record.removals.size(); ++i) {
      const Digon& d = r.record.removals[i].digon;
      const char* kind = d.kind == DigonKind::Puncture ? "puncture"
                         : d.kind == DigonKind::Free   ? "free"
                                                       : "rooted";
      s << "step " << i + 1 << ": " << kind << " digon, interior triangles "
        << d.interior.size() << "\n";
    }
    s << "sentinel " << (r.record.sentinel ? "yes" : "no") << "\n";
    s << "signature: " << signature_text(r.triangulation.signature()) << "\n";
    s << "arcs " << r.triangulation.arc_count() << "\n";
    deliver(s.str(), o.out_path, out);
  } else {
    deliver(dump(to_json(r)), o.out_path, out);
  }
  return kOk;
}

// ---------------------------------------------------------------- reglue

struct ReglueOpts {
  CommonOpts common;
  bool closure = false;
  std::uint64_t budget_nodes = 100000;
};

int cmd_reglue(const ReglueOpts& o, std::ostream& out) {
  PolygonGluing pg = polygon_from_json(load_input(o.common.input));
  validate_structure(pg);
  if (!polygon_gluing_valid(pg))
    throw InvalidInput(
        "side pairing must give exactly two rim vertex classes with every side joining them");

  if (o.closure) {
    std::map<std::string, PolygonGluing> seen;
    std::deque<std::string> queue;
    std::string start_key = polygon_canonical_key(pg);
    seen.emplace(start_key, pg);
    queue.push_back(start_key);
    bool reaches_all_opposite = is_all_opposite(pg);
    bool exhausted = false;
    while (!queue.empty()) {
      if (seen.size() > o.budget_nodes) {
        exhausted = true;
        break;
      }
      PolygonGluing cur = seen.at(queue.front());
      queue.pop_front();
      for (const PolygonGluing& next : admissible_regluings(cur)) {
        std::string key = polygon_canonical_key(next);
        if (seen.emplace(key, next).second) {
          queue.push_back(key);
          if (is_all_opposite(next)) reaches_all_opposite = true;
        }
      }
    }
    if (o.common.format == "text") {
      std::ostringstream s;
      s << "closure size " << seen.size() << "\n";
      s << "reaches all-opposite " << (reaches_all_opposite ? "yes" : "no") << "\n";
      s << "exhausted " << (exhausted ? "yes" : "no") << "\n";
      deliver(s.str(), o.common.out_path, out);
    } else {
      deliver(dump(json{{"closure_size", seen.size()},
                        {"reaches_all_opposite", reaches_all_opposite},
                        {"exhausted", exhausted}}),
              o.common.out_path, out);
    }
    return exhausted ? kExhausted : kOk;
  }

  std::vector<PolygonGluing> moves = admissible_regluings(pg);
  if (o.common.format == "text") {
    std::ostringstream s;
    s << "all-opposite " << (is_all_opposite(pg) ? "yes" : "no") << "\n";
    s << "regluings " << moves.size() << "\n";
    for (const PolygonGluing& m : moves) {
      s << "pairing";
      for (int x : m.pairing) s << " " << x;
      s << (is_all_opposite(m) ? "  (all-opposite)" : "") << "\n";
    }
    deliver(s.str(), o.common.out_path, out);
  } else {
    json list = json::array();
    for (const PolygonGluing& m : moves)
      list.push_back(json{{"gluing", to_json(m)}, {"all_opposite", is_all_opposite(m)}});
    deliver(dump(json{{"gluing", to_json(pg)},
                      {"all_opposite", is_all_opposite(pg)},
                      {"canonical", hex(polygon_canonical_key(pg))},
                      {"regluings", list}}),
            o.common.out_path, out);
  }
  return kOk;
}

// ---------------------------------------------------------- todd-coxeter

struct ToddCoxeterOpts {
  CommonOpts common;
  std::uint64_t budget_cosets = 1000000;
  std::vector<std::string> subgroup_words;
};

int cmd_todd_coxeter(const ToddCoxeterOpts& o, std::ostream& out) {
  Presentation p = presentation_from_any(load_input(o.common.input));
  std::vector<Word> subgroup;
  for (const std::string& w : o.subgroup_words) subgroup.push_back(parse_word(w, p.ngens));
  CosetTable ct = todd_coxeter(p, subgroup, static_cast<size_t>(o.budget_cosets));
  bool complete = ct.status == CosetTable::Status::Complete;
  if (o.common.format == "text") {
    std::ostringstream s;
    s << "status " << (complete ? "complete" : "exhausted") << "\n";
    s << "cosets " << ct.coset_count << "\n";
    if (complete && subgroup.empty()) s << "order " << ct.coset_count << "\n";
    if (complete && !subgroup.empty()) s << "index " << ct.coset_count << "\n";
    deliver(s.str(), o.common.out_path, out);
  } else {
    json j{{"status", complete ? "complete" : "exhausted"},
           {"cosets", ct.coset_count},
           {"generators", p.ngens},
           {"relators", p.relators.size()},
           {"subgroup_generators", subgroup.size()}};
    if (complete && subgroup.empty()) j["order"] = ct.coset_count;
    if (complete && !subgroup.empty()) j["index"] = ct.coset_count;
    deliver(dump(j), o.common.out_path, out);
  }
  return complete ? kOk : kExhausted;
}

// -------------------------------------------------------------- homcount

int cmd_homcount(const CommonOpts& o, const std::string& target_path, std::ostream& out) {
  Presentation p = presentation_from_any(load_input(o.input));
  FiniteGroupTarget target = target_from_json(load_input(target_path));
  long long count = count_homomorphisms(p, target);
  int f2 = abelianization_f2(p);
  if (o.format == "text") {
    std::ostringstream s;
    s << "target " << target.name << "\n";
    s << "target order " << target.order << "\n";
    s << "count " << count << "\n";
    s << "f2_rank " << f2 << "\n";
    deliver(s.str(), o.out_path, out);
  } else {
    deliver(dump(json{{"target", target.name},
                      {"target_order", target.order},
                      {"count", count},
                      {"f2_rank", f2}}),
            o.out_path, out);
  }
  return kOk;
}

// ------------------------------------------------------------ example-d4

// The five-arc quiver of a once-punctured annulus with one marked point on
// each boundary circle.  Its group maps onto the rank-5 simply laced Coxeter
// group whose second generator joins the other four (a star), sending two
// generators to conjugates; every relator must die, and so must one extra
// squared cycle word that is not a consequence of the relators.
struct ExampleD4Opts {
  std::string format = "json";
  std::string out_path;
  bool corrupt = false;
};

int cmd_example_d4(const ExampleD4Opts& o, std::ostream& out) {
  Quiver q = Quiver::from_arrows(
      5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}, {0, 4, 1}, {2, 4, 1}});
  Presentation p = presentation_of(q);

  CoxeterMatrix cm(5);
  for (int j : {0, 2, 3, 4}) cm.set(1, j, 3);
  std::vector<ExactMatrix> gens = tits_matrices(cm);

  std::vector<Word> images{{0}, {1}, {2}, {2, 1, 3, 1, 2}, {3, 1, 4, 1, 3}};
  if (o.corrupt) images[3] = {3};

  HomomorphismReport rep = check_homomorphism(p, images, gens);

  Word half{0, 4, 2, 3, 2, 4};
  Word kernel_word = half;
  kernel_word.insert(kernel_word.end(), half.begin(), half.end());
  Word image_word = apply_substitution(kernel_word, Substitution{images});
  bool kernel_trivial = evaluate_word(gens, image_word).is_identity();

  bool ok = rep.ok && kernel_trivial;

  if (o.format == "text") {
    std::ostringstream s;
    s << "generators " << p.ngens << "\n";
    s << "involutions " << (rep.bad_generators.empty() ? "ok" : "FAIL") << "\n";
    for (size_t i = 0; i < p.relators.size(); ++i) {
      bool bad = std::find(rep.bad_relators.begin(), rep.bad_relators.end(), static_cast<int>(i)) !=
                 rep.bad_relators.end();
      s << "relator " << i + 1 << " " << kind_label(p.relators[i].kind) << " "
        << (bad ? "FAIL" : "ok") << "\n";
    }
    s << "kernel element " << (kernel_trivial ? "maps to identity" : "FAILS to map to identity")
      << "\n";
    s << (ok ? "PASS" : "FAIL") << "\n";
    deliver(s.str(), o.out_path, out);
  } else {
    json map_json = json::array();
    for (const Word& w : images) map_json.push_back(letters_json(w));
    json bad_gens = json::array();
    for (int g : rep.bad_generators) bad_gens.push_back(g + 1);
    json rel_json = json::array();
    for (size_t i = 0; i < p.relators.size(); ++i) {
      bool bad = std::find(rep.bad_relators.begin(), rep.bad_relators.end(), static_cast<int>(i)) !=
                 rep.bad_relators.end();
      rel_json.push_back(json{{"index", i + 1},
                              {"letters", letters_json(p.relators[i].word)},
                              {"kind", kind_label(p.relators[i].kind)},
                              {"ok", !bad}});
    }
    deliver(dump(json{{"generators", p.ngens},
                      {"map", map_json},
                      {"corrupted", o.corrupt},
                      {"involutions_ok", rep.bad_generators.empty()},
                      {"bad_generators", bad_gens},
                      {"relators", rel_json},
                      {"kernel_element",
                       json{{"letters", letters_json(kernel_word)}, {"trivial", kernel_trivial}}},
                      {"ok", ok}}),
            o.out_path, out);
  }
  return ok ? kOk : kViolated;
}

// -------------------------------------------------------- counterexample

struct CounterexampleOpts {
  std::string format = "json";
  std::string out_path;
  int genus = 2;
  std::string gluing_path;
};

void matchings(std::vector<int>& pairing, const std::function<void()>& emit) {
  int m = static_cast<int>(pairing.size());
  int i = 0;
  while (i < m && pairing[i] != -1) ++i;
  if (i == m) {
    emit();
    return;
  }
  for (int j = i + 1; j < m; ++j) {
    if (pairing[j] != -1) continue;
    pairing[i] = j;
    pairing[j] = i;
    matchings(pairing, emit);
    pairing[i] = -1;
    pairing[j] = -1;
  }
}

int cmd_counterexample(const CounterexampleOpts& o, std::ostream& out) {
  if (!o.gluing_path.empty()) {
    PolygonGluing pg = polygon_from_json(load_input(o.gluing_path));
    validate_structure(pg);
    if (!polygon_gluing_valid(pg))
      throw InvalidInput(
          "side pairing must give exactly two rim vertex classes with every side joining them");
    Triangulation t = realize_polygon_gluing(pg);
    size_t moves = loop_free_flips(t).size();
    if (o.format == "text") {
      std::ostringstream s;
      s << "all-opposite " << (is_all_opposite(pg) ? "yes" : "no") << "\n";
      s << "signature: " << signature_text(t.signature()) << "\n";
      s << "loop-free flips " << moves << "\n";
      s << "rigid " << (moves == 0 ? "yes" : "no") << "\n";
      deliver(s.str(), o.out_path, out);
    } else {
      deliver(dump(json{{"gluing", to_json(pg)},
                        {"all_opposite", is_all_opposite(pg)},
                        {"signature", to_json(t.signature())},
                        {"loop_free_flips", moves},
                        {"rigid", moves == 0}}),
              o.out_path, out);
    }
    return kOk;
  }

  int m = 4 * o.genus + 2;
  struct ClassInfo {
    int count = 0;
    bool rigid = true;
    SurfaceSignature signature;
    std::vector<int> sample;
  };
  std::vector<std::string> class_order;
  std::map<std::string, ClassInfo> classes;
  long long scanned = 0;
  long long valid = 0;
  bool all_rigid = true;

  std::vector<int> pairing(static_cast<size_t>(m), -1);
  matchings(pairing, [&] {
    ++scanned;
    PolygonGluing pg{o.genus, pairing};
    if (!polygon_gluing_valid(pg)) return;
    ++valid;
    Triangulation t = realize_polygon_gluing(pg);
    bool rigid = loop_free_flips(t).empty();
    all_rigid = all_rigid && rigid;
    std::string key = canonical_key(t);
    auto it = classes.find(key);
    if (it == classes.end()) {
      ClassInfo info;
      info.count = 1;
      info.rigid = rigid;
      info.signature = t.signature();
      info.sample = pairing;
      classes.emplace(key, std::move(info));
      class_order.push_back(key);
    } else {
      it->second.count += 1;
      it->second.rigid = it->second.rigid && rigid;
    }
  });

  bool want_two = o.genus >= 2;
  bool ok = all_rigid && (!want_two || class_order.size() >= 2);

  if (o.format == "text") {
    std::ostringstream s;
    s << "genus " << o.genus << " sides " << m << "\n";
    s << "pairings " << scanned << " valid " << valid << " classes " << class_order.size() << "\n";
    for (size_t i = 0; i < class_order.size(); ++i) {
      const ClassInfo& c = classes.at(class_order[i]);
      s << "class " << i + 1 << ": count " << c.count << " rigid " << (c.rigid ? "yes" : "no")
        << " (" << signature_text(c.signature) << ")\n";
    }
    s << "all rigid " << (all_rigid ? "yes" : "no") << "\n";
    if (want_two)
      s << "distinct classes " << class_order.size() << " (need >= 2)"
        << "\n";
    s << (ok ? "PASS" : "FAIL") << "\n";
    deliver(s.str(), o.out_path, out);
  } else {
    json details = json::array();
    for (const std::string& key : class_order) {
      const ClassInfo& c = classes.at(key);
      details.push_back(json{{"count", c.count},
                             {"rigid", c.rigid},
                             {"signature", to_json(c.signature)},
                             {"sample", to_json(PolygonGluing{o.genus, c.sample})}});
    }
    json j{{"genus", o.genus},
           {"sides", m},
           {"pairings_scanned", scanned},
           {"valid_gluings", valid},
           {"classes", class_order.size()},
           {"class_details", details},
           {"all_rigid", all_rigid},
           {"ok", ok}};
    if (want_two) j["distinct_classes_ok"] = class_order.size() >= 2;
    deliver(dump(j), o.out_path, out);
  }
  return ok ? kOk : kViolated;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"quiver mutations, triangulated surfaces and their Coxeter-style quotient groups"};
  app.require_subcommand(1);

  int code = kOk;

  CommonOpts mutate_opts;
  int mutate_at = 0;
  auto* c_mutate = app.add_subcommand("mutate", "mutate a quiver at one vertex");
  add_common(c_mutate, mutate_opts);
  c_mutate->add_option("-k,--at", mutate_at, "vertex to mutate at (1-based)")->required();
  c_mutate->callback([&] { code = cmd_mutate(mutate_opts, mutate_at, out); });

  CommonOpts quiver_of_opts;
  auto* c_quiver_of =
      app.add_subcommand("quiver-of", "signed-adjacency quiver of a triangulation");
  add_common(c_quiver_of, quiver_of_opts);
  c_quiver_of->callback([&] { code = cmd_quiver_of(quiver_of_opts, out); });

  CommonOpts present_opts;
  auto* c_present = app.add_subcommand(
      "present", "group presentation of a quiver, triangulation or side pairing");
  add_common(c_present, present_opts);
  c_present->callback([&] { code = cmd_present(present_opts, out, err); });

  CommonOpts flip_opts;
  int flip_arc = 0;
  auto* c_flip = app.add_subcommand("flip", "flip one interior arc of a triangulation");
  add_common(c_flip, flip_opts);
  c_flip->add_option("-a,--arc", flip_arc, "arc to flip (1-based)")->required();
  c_flip->callback([&] { code = cmd_flip(flip_opts, flip_arc, out); });

  FlipgraphOpts fg_opts;
  auto* c_flipgraph = app.add_subcommand(
      "flipgraph", "breadth-first closure of loop-free triangulations under loop-free flips");
  add_common(c_flipgraph, fg_opts.common, {"json", "text", "dot"});
  c_flipgraph->add_option("--budget-nodes", fg_opts.budget_nodes, "stop after this many nodes")
      ->capture_default_str();
  c_flipgraph
      ->add_option("--budget-cosets", fg_opts.budget_cosets,
                   "coset budget for the per-node order enumeration")
      ->capture_default_str();
  c_flipgraph->add_option("--target", fg_opts.target_paths,
                          "group table JSON file; counts homomorphisms per node (repeatable)");
  c_flipgraph->callback([&] { code = cmd_flipgraph(fg_opts, out); });

  CommonOpts associate_opts;
  auto* c_associate = app.add_subcommand(
      "associate", "remove puncture and rooted digons until none are left");
  add_common(c_associate, associate_opts);
  c_associate->callback([&] { code = cmd_associate(associate_opts, out); });

  ReglueOpts reglue_opts;
  auto* c_reglue =
      app.add_subcommand("reglue", "admissible re-cuts of a polygon side pairing");
  add_common(c_reglue, reglue_opts.common);
  c_reglue->add_flag("--closure", reglue_opts.closure,
                     "explore all pairings reachable by repeated re-cuts");
  c_reglue
      ->add_option("--budget-nodes", reglue_opts.budget_nodes,
                   "stop the closure after this many pairings")
      ->capture_default_str();
  c_reglue->callback([&] { code = cmd_reglue(reglue_opts, out); });

  ToddCoxeterOpts tc_opts;
  auto* c_tc = app.add_subcommand("todd-coxeter",
                                  "coset enumeration for the presented group");
  add_common(c_tc, tc_opts.common);
  c_tc->add_option("--budget-cosets", tc_opts.budget_cosets, "largest number of cosets to define")
      ->capture_default_str();
  c_tc->add_option("--subgroup", tc_opts.subgroup_words,
                   "subgroup generator as a word of 1-based letters, e.g. \"1 2\" (repeatable)");
  c_tc->callback([&] { code = cmd_todd_coxeter(tc_opts, out); });

  CommonOpts homcount_opts;
  std::string homcount_target;
  auto* c_homcount =
      app.add_subcommand("homcount", "count homomorphisms into a finite group table");
  add_common(c_homcount, homcount_opts);
  c_homcount->add_option("--target", homcount_target, "group table JSON file")->required();
  c_homcount->callback([&] { code = cmd_homcount(homcount_opts, homcount_target, out); });

  ExampleD4Opts d4_opts;
  auto* c_d4 = app.add_subcommand(
      "example-d4",
      "check the built-in punctured-annulus map onto a rank-5 star-shaped Coxeter group");
  c_d4->add_option("--format", d4_opts.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  c_d4->add_option("--out", d4_opts.out_path, "write the report to this file instead of stdout");
  c_d4->add_flag("--corrupt", d4_opts.corrupt,
                 "break one generator image to demonstrate a failure report");
  c_d4->callback([&] { code = cmd_example_d4(d4_opts, out); });

  CounterexampleOpts cx_opts;
  auto* c_cx = app.add_subcommand(
      "counterexample",
      "enumerate punctured-polygon side pairings and partition the rigid fan triangulations");
  c_cx->add_option("--format", cx_opts.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  c_cx->add_option("--out", cx_opts.out_path, "write the report to this file instead of stdout");
  c_cx->add_option("--genus", cx_opts.genus, "genus of the glued surface")
      ->check(CLI::Range(1, 2))
      ->capture_default_str();
  c_cx->add_option("--gluing", cx_opts.gluing_path, "analyze a single side-pairing file instead");
  c_cx->callback([&] { code = cmd_counterexample(cx_opts, out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int cli_code = app.exit(e, out, err);
    return cli_code == 0 ? kOk : kBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const json::exception& e) {
    err << "error: bad JSON input: " << e.what() << "\n";
    return kBadInput;
  }
  return code;
}

}  // namespace qcox
