#include "qcox/json_io.hpp"

#include <fstream>

namespace qcox {

namespace {

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

int need_int(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_integer()) throw InvalidInput(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::vector<std::array<int, 3>> triple_list(const json& v, const char* what) {
  if (!v.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  std::vector<std::array<int, 3>> out;
  for (const json& e : v) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
        !e[1].is_number_integer() || !e[2].is_number_integer())
      throw InvalidInput(std::string(what) + " entries must be integer triples");
    out.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
  }
  return out;
}

json arrows_json(const std::vector<std::array<int, 3>>& arrows) {
  json a = json::array();
  for (const auto& t : arrows) a.push_back(json::array({t[0], t[1], t[2]}));
  return a;
}

}  // namespace

json to_json(const Quiver& q) {
  return {{"n", q.size()}, {"arrows", arrows_json(q.arrows())}};
}

Quiver quiver_from_json(const json& j) {
  int n = need_int(j, "n");
  return Quiver::from_arrows(n, triple_list(need(j, "arrows"), "arrows"));
}

json to_json(const AnnotatedQuiver& aq) {
  json j{{"n", aq.size()},
         {"weighted", aq.weighted()},
         {"arrows", arrows_json(aq.weighted() ? aq.diagram().arrows() : aq.quiver().arrows())}};
  json blocks = json::array();
  for (const BlockAnnotation& b : aq.blocks) {
    json e{{"kind", b.kind == BlockKind::IV ? "IV" : "IV2"},
           {"base", json::array({b.from, b.to})}};
    if (b.kind == BlockKind::IV)
      e["extra"] = json::array({b.extra[0], b.extra[1]});
    else
      e["extra"] = json::array({b.extra[0]});
    blocks.push_back(std::move(e));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

AnnotatedQuiver annotated_from_json(const json& j) {
  int n = need_int(j, "n");
  bool weighted = j.contains("weighted") && j.at("weighted").is_boolean() &&
                  j.at("weighted").get<bool>();
  auto arrows = triple_list(need(j, "arrows"), "arrows");
  AnnotatedQuiver aq{Quiver(), {}};
  if (weighted)
    aq.graph = Diagram::from_arrows(n, arrows);
  else
    aq.graph = Quiver::from_arrows(n, arrows);
  if (j.contains("blocks")) {
    const json& blocks = j.at("blocks");
    if (!blocks.is_array()) throw InvalidInput("blocks must be an array");
    for (const json& e : blocks) {
      BlockAnnotation b;
      std::string kind = need(e, "kind").get<std::string>();
      if (kind == "IV")
        b.kind = BlockKind::IV;
      else if (kind == "IV2")
        b.kind = BlockKind::IV2;
      else
        throw InvalidInput("block kind must be IV or IV2");
      const json& base = need(e, "base");
      if (!base.is_array() || base.size() != 2) throw InvalidInput("block base must be a pair");
      b.from = base[0].get<int>();
      b.to = base[1].get<int>();
      const json& extra = need(e, "extra");
      size_t want = b.kind == BlockKind::IV ? 2 : 1;
      if (!extra.is_array() || extra.size() != want)
        throw InvalidInput("block extra has the wrong arity");
      b.extra = {extra[0].get<int>(), want == 2 ? extra[1].get<int>() : -1};
      aq.blocks.push_back(b);
    }
  }
  return aq;
}

json to_json(const Triangulation& t) {
  json pairs = json::array();
  for (int s = 0; s < t.slot_count(); ++s)
    if (t.partner(s) > s) pairs.push_back(json::array({s, t.partner(s)}));
  return {{"triangles", t.triangle_count()}, {"glue", pairs}};
}

Triangulation triangulation_from_json(const json& j) {
  int n = need_int(j, "triangles");
  const json& pairs = need(j, "glue");
  if (!pairs.is_array()) throw InvalidInput("glue must be an array");
  std::vector<std::pair<int, int>> glued;
  for (const json& e : pairs) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw InvalidInput("glue entries must be integer pairs");
    glued.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Triangulation::from_gluing(n, glued);
}

json to_json(const SurfaceSignature& s) {
  return {{"genus", s.genus},
          {"punctures", s.punctures},
          {"boundary_components", s.boundary_components},
          {"boundary_marks", s.boundary_marks}};
}

json to_json(const PolygonGluing& pg) {
  json pairs = json::array();
  for (int i = 0; i < pg.sides(); ++i)
    if (pg.pairing[static_cast<size_t>(i)] > i)
      pairs.push_back(json::array({i, pg.pairing[static_cast<size_t>(i)]}));
  return {{"g", pg.genus}, {"pairing", pairs}};
}

PolygonGluing polygon_from_json(const json& j) {
  PolygonGluing pg;
  pg.genus = need_int(j, "g");
  if (pg.genus < 0) throw InvalidInput("negative genus");
  const json& pairs = need(j, "pairing");
  if (!pairs.is_array()) throw InvalidInput("pairing must be an array");
  pg.pairing.assign(static_cast<size_t>(pg.sides()), -1);
  for (const json& e : pairs) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw InvalidInput("pairing entries must be integer pairs");
    int a = e[0].get<int>(), b = e[1].get<int>();
    if (a < 0 || b < 0 || a >= pg.sides() || b >= pg.sides() || a == b)
      throw InvalidInput("pairing entry out of range");
    if (pg.pairing[static_cast<size_t>(a)] != -1 || pg.pairing[static_cast<size_t>(b)] != -1)
      throw InvalidInput("side paired twice");
    pg.pairing[static_cast<size_t>(a)] = b;
    pg.pairing[static_cast<size_t>(b)] = a;
  }
  validate_structure(pg);
  return pg;
}

json to_json(const FiniteGroupTarget& g) {
  return {{"name", g.name}, {"order", g.order}, {"mul", g.mul}};
}

FiniteGroupTarget target_from_json(const json& j) {
  FiniteGroupTarget g;
  g.name = need(j, "name").get<std::string>();
  g.order = need_int(j, "order");
  const json& mul = need(j, "mul");
  if (!mul.is_array()) throw InvalidInput("mul must be an array");
  for (const json& row : mul) {
    if (!row.is_array()) throw InvalidInput("mul rows must be arrays");
    std::vector<int> r;
    for (const json& v : row) {
      if (!v.is_number_integer()) throw InvalidInput("mul entries must be integers");
      r.push_back(v.get<int>());
    }
    g.mul.push_back(std::move(r));
  }
  g.validate();
  return g;
}

namespace {

std::string kind_name(RelatorKind k) {
  switch (k) {
    case RelatorKind::CoxeterPair:
      return "pair";
    case RelatorKind::ChordlessCycle:
      return "cycle";
    case RelatorKind::BlockCycle:
      return "block-cycle";
  }
  throw Error("unknown relator kind");
}

RelatorKind kind_from_name(const std::string& s) {
  if (s == "pair") return RelatorKind::CoxeterPair;
  if (s == "cycle") return RelatorKind::ChordlessCycle;
  if (s == "block-cycle") return RelatorKind::BlockCycle;
  throw InvalidInput("unknown relator kind '" + s + "'");
}

}  // namespace

json to_json(const Presentation& p) {
  json rels = json::array();
  for (const Relator& r : p.relators) {
    json letters = json::array();
    for (int x : r.word) letters.push_back(x + 1);
    rels.push_back({{"letters", std::move(letters)}, {"kind", kind_name(r.kind)}, {"note", r.note}});
  }
  json j{{"gens", p.ngens}, {"relators", std::move(rels)}};
  if (p.feature_count >= 0) j["feature_count"] = p.feature_count;
  if (!p.warning.empty()) j["warning"] = p.warning;
  return j;
}

Presentation presentation_from_json(const json& j) {
  Presentation p;
  p.ngens = need_int(j, "gens");
  if (p.ngens < 0) throw InvalidInput("negative generator count");
  const json& rels = need(j, "relators");
  if (!rels.is_array()) throw InvalidInput("relators must be an array");
  for (const json& e : rels) {
    Relator r;
    const json& letters = need(e, "letters");
    if (!letters.is_array()) throw InvalidInput("letters must be an array");
    for (const json& v : letters) {
      if (!v.is_number_integer()) throw InvalidInput("letters must be integers");
      int x = v.get<int>();
      if (x < 1 || x > p.ngens) throw InvalidInput("letter out of range");
      r.word.push_back(x - 1);
    }
    if (e.contains("kind")) r.kind = kind_from_name(e.at("kind").get<std::string>());
    if (e.contains("note")) r.note = e.at("note").get<std::string>();
    p.relators.push_back(std::move(r));
  }
  if (j.contains("feature_count")) p.feature_count = j.at("feature_count").get<int>();
  if (j.contains("warning")) p.warning = j.at("warning").get<std::string>();
  return p;
}

json to_json(const Digon& d) {
  const char* kind = d.kind == DigonKind::Puncture ? "puncture"
                     : d.kind == DigonKind::Free   ? "free"
                                                   : "rooted";
  json j{{"kind", kind},
         {"rim_slots", json::array({d.rim_slots[0], d.rim_slots[1]})},
         {"poles", json::array({d.poles[0], d.poles[1]})},
         {"interior", d.interior}};
  if (d.kind == DigonKind::Puncture) {
    j["triangles"] = json::array({d.triangles[0], d.triangles[1]});
    j["shared_arcs"] = json::array({d.shared_arcs[0], d.shared_arcs[1]});
  }
  if (d.kind == DigonKind::Rooted) j["root"] = d.root;
  return j;
}

json to_json(const AssociateResult& r) {
  json removals = json::array();
  for (const DigonRemovalStep& s : r.record.removals)
    removals.push_back({{"digon", to_json(s.digon)}, {"arc_map", s.arc_map}});
  return {{"associate", to_json(r.triangulation)},
          {"signature", to_json(r.triangulation.signature())},
          {"removals", std::move(removals)},
          {"projection", r.record.projection},
          {"sentinel", r.record.sentinel}};
}

json to_json(const FlipGraph& g) {
  json nodes = json::array();
  for (const Triangulation& t : g.nodes) nodes.push_back(to_json(t));
  json edges = json::array();
  for (const FlipGraph::Edge& e : g.edges) edges.push_back(json::array({e.from, e.to, e.arc}));
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"exhausted", g.exhausted}};
}

std::string to_dot(const FlipGraph& g) {
  std::string out = "digraph flips {\n";
  for (size_t i = 0; i < g.nodes.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + std::to_string(i) + "\"];\n";
  for (const FlipGraph::Edge& e : g.edges)
    out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to) + " [label=\"" +
           std::to_string(e.arc) + "\"];\n";
  out += "}\n";
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("bad JSON in " + path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

}  // namespace qcox
