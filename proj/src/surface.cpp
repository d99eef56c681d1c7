#include "qcox/surface.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace qcox {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(static_cast<size_t>(n)) {
    std::iota(p.begin(), p.end(), 0);
  }
  int find(int x) {
    while (p[static_cast<size_t>(x)] != x) {
      p[static_cast<size_t>(x)] = p[static_cast<size_t>(p[static_cast<size_t>(x)])];
      x = p[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) p[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  }
};

std::vector<int> triangle_components(const std::vector<int>& glue) {
  int nt = static_cast<int>(glue.size()) / 3;
  UnionFind uf(nt);
  for (int s = 0; s < static_cast<int>(glue.size()); ++s)
    if (glue[static_cast<size_t>(s)] >= 0) uf.unite(s / 3, glue[static_cast<size_t>(s)] / 3);
  std::vector<int> comp(static_cast<size_t>(nt));
  std::map<int, int> ids;
  for (int t = 0; t < nt; ++t) {
    int r = uf.find(t);
    auto it = ids.find(r);
    if (it == ids.end()) it = ids.emplace(r, static_cast<int>(ids.size())).first;
    comp[static_cast<size_t>(t)] = it->second;
  }
  return comp;
}

// Next unglued slot counterclockwise along the boundary: walk the corner fan
// at the head of s until an unglued side appears.
int next_boundary_slot(const std::vector<int>& glue, int s) {
  int t = s / 3;
  int c = (s % 3 + 1) % 3;
  for (size_t guard = 0; guard <= glue.size(); ++guard) {
    int e = 3 * t + c;
    if (glue[static_cast<size_t>(e)] < 0) return e;
    int p = glue[static_cast<size_t>(e)];
    t = p / 3;
    c = (p % 3 + 1) % 3;
  }
  throw Error("boundary walk did not close");
}

int mirror_slot(int s) { return 3 * (s / 3) + (2 - s % 3); }

std::vector<int> mirror_table(const std::vector<int>& glue) {
  std::vector<int> out(glue.size(), -1);
  for (int s = 0; s < static_cast<int>(glue.size()); ++s) {
    int p = glue[static_cast<size_t>(s)];
    out[static_cast<size_t>(mirror_slot(s))] = p < 0 ? -1 : mirror_slot(p);
  }
  return out;
}

// Breadth-first renumbering from a root slot: the root triangle becomes
// triangle 0 with the root as its slot 0; scanning new slots in order, an
// unseen partner triangle gets the next index with the partner slot as its
// slot 0.  The emitted sequence of partner ids determines the complex.
std::vector<int> encode_from_root(const std::vector<int>& glue, int root,
                                  std::vector<int>* new2old_out) {
  int nslots = static_cast<int>(glue.size());
  std::vector<int> old2new(static_cast<size_t>(nslots), -1);
  std::vector<int> new2old(static_cast<size_t>(nslots), -1);
  int assigned = 0;
  auto assign = [&](int slot0_old) {
    int t = slot0_old / 3;
    int k0 = slot0_old % 3;
    int idx = assigned++;
    for (int x = 0; x < 3; ++x) {
      int os = 3 * t + (k0 + x) % 3;
      old2new[static_cast<size_t>(os)] = 3 * idx + x;
      new2old[static_cast<size_t>(3 * idx + x)] = os;
    }
  };
  assign(root);
  std::vector<int> code;
  code.reserve(static_cast<size_t>(nslots));
  for (int ns = 0; ns < nslots; ++ns) {
    int os = new2old[static_cast<size_t>(ns)];
    int p = glue[static_cast<size_t>(os)];
    if (p < 0) {
      code.push_back(-1);
      continue;
    }
    if (old2new[static_cast<size_t>(p)] < 0) assign(p);
    code.push_back(old2new[static_cast<size_t>(p)]);
  }
  if (new2old_out) *new2old_out = std::move(new2old);
  return code;
}

struct CanonicalForm {
  std::vector<int> code;
  std::vector<int> new2old;
};

CanonicalForm canonical_oriented_form(const std::vector<int>& glue) {
  CanonicalForm best;
  for (int root = 0; root < static_cast<int>(glue.size()); ++root) {
    std::vector<int> n2o;
    std::vector<int> code = encode_from_root(glue, root, &n2o);
    if (best.code.empty() || code < best.code) {
      best.code = std::move(code);
      best.new2old = std::move(n2o);
    }
  }
  return best;
}

std::string code_to_key(const std::vector<int>& code) {
  std::string s;
  s.reserve(code.size() * 4);
  for (int v : code) {
    uint32_t u = static_cast<uint32_t>(v + 1);
    s.push_back(static_cast<char>((u >> 24) & 0xff));
    s.push_back(static_cast<char>((u >> 16) & 0xff));
    s.push_back(static_cast<char>((u >> 8) & 0xff));
    s.push_back(static_cast<char>(u & 0xff));
  }
  return s;
}

}  // namespace

Triangulation::Triangulation(std::vector<int> glue) : glue_(std::move(glue)) {
  int nslots = static_cast<int>(glue_.size());
  if (nslots == 0 || nslots % 3 != 0) throw InvalidInput("bad slot count");
  for (int s = 0; s < nslots; ++s) {
    int p = glue_[static_cast<size_t>(s)];
    if (p == -1) continue;
    if (p < 0 || p >= nslots) throw InvalidInput("glue target out of range");
    if (p == s) throw InvalidInput("slot glued to itself");
    if (glue_[static_cast<size_t>(p)] != s) throw InvalidInput("glue is not an involution");
  }
  std::vector<int> comp = triangle_components(glue_);
  for (int c : comp)
    if (c != 0) throw InvalidInput("triangulation is not connected");

  arc_of_slot_.assign(static_cast<size_t>(nslots), -1);
  for (int s = 0; s < nslots; ++s) {
    int p = glue_[static_cast<size_t>(s)];
    if (p == -1) continue;
    if (p > s) {
      arc_of_slot_[static_cast<size_t>(s)] = static_cast<int>(arc_slot_.size());
      arc_of_slot_[static_cast<size_t>(p)] = static_cast<int>(arc_slot_.size());
      arc_slot_.push_back(s);
    }
  }
  for (int s = 0; s < nslots; ++s)
    if (glue_[static_cast<size_t>(s)] == -1) bd_slot_.push_back(s);

  UnionFind uf(nslots);
  for (int s = 0; s < nslots; ++s) {
    int p = glue_[static_cast<size_t>(s)];
    if (p >= 0) uf.unite(s, 3 * (p / 3) + (p % 3 + 1) % 3);
  }
  vertex_.assign(static_cast<size_t>(nslots), -1);
  std::map<int, int> roots;
  for (int c = 0; c < nslots; ++c) {
    int r = uf.find(c);
    auto it = roots.find(r);
    if (it == roots.end()) it = roots.emplace(r, static_cast<int>(roots.size())).first;
    vertex_[static_cast<size_t>(c)] = it->second;
  }
  nvertices_ = static_cast<int>(roots.size());

  on_boundary_.assign(static_cast<size_t>(nvertices_), 0);
  for (int c = 0; c < nslots; ++c) {
    int t = c / 3, k = c % 3;
    bool bd = glue_[static_cast<size_t>(3 * t + k)] == -1 ||
              glue_[static_cast<size_t>(3 * t + (k + 2) % 3)] == -1;
    if (bd) on_boundary_[static_cast<size_t>(vertex_[static_cast<size_t>(c)])] = 1;
  }

  std::vector<char> seen(static_cast<size_t>(nslots), 0);
  for (int s : bd_slot_) {
    if (seen[static_cast<size_t>(s)]) continue;
    std::vector<int> circle;
    int cur = s;
    do {
      circle.push_back(cur);
      seen[static_cast<size_t>(cur)] = 1;
      cur = next_boundary_slot(glue_, cur);
    } while (cur != s);
    circles_.push_back(std::move(circle));
  }

  int V = nvertices_;
  int E = arc_count() + boundary_segment_count();
  int F = triangle_count();
  int chi = V - E + F;
  int b = static_cast<int>(circles_.size());
  int twog = 2 - b - chi;
  if (twog < 0 || twog % 2 != 0) throw InvalidInput("complex is not an oriented surface");
  signature_.genus = twog / 2;
  signature_.boundary_components = b;
  signature_.punctures = 0;
  signature_.boundary_marks = 0;
  for (int v = 0; v < nvertices_; ++v) {
    if (on_boundary_[static_cast<size_t>(v)])
      ++signature_.boundary_marks;
    else
      ++signature_.punctures;
  }
}

Triangulation Triangulation::from_table(std::vector<int> glue) {
  return Triangulation(std::move(glue));
}

Triangulation Triangulation::from_gluing(int triangles,
                                         const std::vector<std::pair<int, int>>& glued_pairs) {
  if (triangles <= 0) throw InvalidInput("need at least one triangle");
  std::vector<int> glue(static_cast<size_t>(3 * triangles), -1);
  for (auto [a, b] : glued_pairs) {
    if (a < 0 || b < 0 || a >= 3 * triangles || b >= 3 * triangles)
      throw InvalidInput("glued slot out of range");
    if (a == b) throw InvalidInput("slot glued to itself");
    if (glue[static_cast<size_t>(a)] != -1 || glue[static_cast<size_t>(b)] != -1)
      throw InvalidInput("slot glued twice");
    glue[static_cast<size_t>(a)] = b;
    glue[static_cast<size_t>(b)] = a;
  }
  return Triangulation(std::move(glue));
}

std::pair<int, int> Triangulation::arc_slots(int arc) const {
  if (arc < 0 || arc >= arc_count()) throw InvalidInput("arc index out of range");
  int s = arc_slot_[static_cast<size_t>(arc)];
  return {s, glue_[static_cast<size_t>(s)]};
}

std::pair<int, int> Triangulation::arc_endpoints(int arc) const {
  auto [s, p] = arc_slots(arc);
  (void)p;
  int t = s / 3, k = s % 3;
  return {vertex_[static_cast<size_t>(3 * t + k)],
          vertex_[static_cast<size_t>(3 * t + (k + 1) % 3)]};
}

bool Triangulation::is_loop(int arc) const {
  auto [a, b] = arc_endpoints(arc);
  return a == b;
}

bool Triangulation::is_self_folded(int t) const {
  for (int k = 0; k < 3; ++k) {
    int p = glue_[static_cast<size_t>(3 * t + k)];
    if (p >= 0 && p / 3 == t) return true;
  }
  return false;
}

std::vector<int> Triangulation::self_folded_triangles() const {
  std::vector<int> out;
  for (int t = 0; t < triangle_count(); ++t)
    if (is_self_folded(t)) out.push_back(t);
  return out;
}

bool is_loop_free(const Triangulation& t) { return loop_arcs(t).empty(); }

std::vector<int> loop_arcs(const Triangulation& t) {
  std::vector<int> out;
  for (int a = 0; a < t.arc_count(); ++a)
    if (t.is_loop(a)) out.push_back(a);
  return out;
}

FlipResult flip_detailed(const Triangulation& t, int arc) {
  if (arc < 0 || arc >= t.arc_count() + t.boundary_segment_count())
    throw InvalidInput("edge index out of range");
  if (arc >= t.arc_count()) throw BoundaryArcError("cannot flip a boundary segment");
  auto [sA, sB] = t.arc_slots(arc);
  int tA = sA / 3, kA = sA % 3;
  int tB = sB / 3, kB = sB % 3;
  if (tA == tB) throw TaggedFlipError("arc is the inner edge of a self-folded triangle");

  int nslots = t.slot_count();
  std::vector<int> M(static_cast<size_t>(nslots));
  std::iota(M.begin(), M.end(), 0);
  M[static_cast<size_t>(sA)] = 3 * tA;
  M[static_cast<size_t>(sB)] = 3 * tB;
  M[static_cast<size_t>(3 * tA + (kA + 1) % 3)] = 3 * tA + 2;
  M[static_cast<size_t>(3 * tA + (kA + 2) % 3)] = 3 * tB + 1;
  M[static_cast<size_t>(3 * tB + (kB + 1) % 3)] = 3 * tB + 2;
  M[static_cast<size_t>(3 * tB + (kB + 2) % 3)] = 3 * tA + 1;

  std::vector<int> glue(static_cast<size_t>(nslots), -1);
  for (int s = 0; s < nslots; ++s) {
    if (s == sA || s == sB) continue;
    int p = t.partner(s);
    glue[static_cast<size_t>(M[static_cast<size_t>(s)])] =
        p < 0 ? -1 : M[static_cast<size_t>(p)];
  }
  glue[static_cast<size_t>(3 * tA)] = 3 * tB;
  glue[static_cast<size_t>(3 * tB)] = 3 * tA;

  FlipResult res{Triangulation::from_table(std::move(glue)), {}};
  res.arc_map.assign(static_cast<size_t>(t.arc_count()), -1);
  for (int a = 0; a < t.arc_count(); ++a) {
    if (a == arc) {
      res.arc_map[static_cast<size_t>(a)] = res.triangulation.arc_of_slot(3 * tA);
    } else {
      int s = t.arc_slots(a).first;
      res.arc_map[static_cast<size_t>(a)] =
          res.triangulation.arc_of_slot(M[static_cast<size_t>(s)]);
    }
  }
  return res;
}

Triangulation flip(const Triangulation& t, int arc) {
  return flip_detailed(t, arc).triangulation;
}

std::vector<int> loop_free_flips(const Triangulation& t) {
  std::vector<int> out;
  for (int a = 0; a < t.arc_count(); ++a) {
    auto [sA, sB] = t.arc_slots(a);
    if (sA / 3 == sB / 3) continue;
    if (is_loop_free(flip(t, a))) out.push_back(a);
  }
  return out;
}

AnnotatedQuiver quiver_of(const Triangulation& t) {
  int n = t.arc_count();
  std::vector<int> base(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  auto at = [&](int i, int j) -> int& {
    return base[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
  };

  // pi sends the inner edge of each self-folded triangle to its loop.
  std::vector<int> pi(static_cast<size_t>(n));
  std::iota(pi.begin(), pi.end(), 0);
  std::vector<std::pair<int, int>> folds;  // (triangle, loop slot)
  for (int tr = 0; tr < t.triangle_count(); ++tr) {
    if (!t.is_self_folded(tr)) continue;
    int loop_slot = -1;
    for (int k = 0; k < 3; ++k) {
      int s = 3 * tr + k;
      int p = t.partner(s);
      if (p < 0 || p / 3 != tr) loop_slot = s;
    }
    if (loop_slot < 0) throw InvalidInput("triangle glued to itself on all sides");
    if (t.partner(loop_slot) < 0) continue;  // fold against the boundary, no loop arc
    int radius = t.arc_of_slot(3 * tr + ((loop_slot % 3) + 1) % 3);
    int loop = t.arc_of_slot(loop_slot);
    pi[static_cast<size_t>(radius)] = loop;
    folds.emplace_back(tr, loop_slot);
  }

  for (int tr = 0; tr < t.triangle_count(); ++tr) {
    if (t.is_self_folded(tr)) continue;
    for (int k = 0; k < 3; ++k) {
      int i = t.arc_of_slot(3 * tr + k);
      int j = t.arc_of_slot(3 * tr + (k + 1) % 3);
      if (i < 0 || j < 0) continue;
      ++at(i, j);
      --at(j, i);
    }
  }

  Quiver q(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int v = at(pi[static_cast<size_t>(i)], pi[static_cast<size_t>(j)]);
      if (i == j || pi[static_cast<size_t>(i)] == pi[static_cast<size_t>(j)]) v = 0;
      if (v > 0) q.set_arrow(i, j, v);
      if (std::abs(v) > 2) throw Error("adjacency multiplicity above two");
    }

  AnnotatedQuiver aq{q, {}};
  for (auto [tr, loop_slot] : folds) {
    int enc = t.partner(loop_slot) / 3;
    if (t.is_self_folded(enc)) continue;  // two mutually folded triangles, no frame
    int k0 = t.partner(loop_slot) % 3;
    int u = t.arc_of_slot(3 * enc + (k0 + 1) % 3);
    int v = t.arc_of_slot(3 * enc + (k0 + 2) % 3);
    if (u < 0 || v < 0) continue;  // frame side on the boundary, no cycle possible
    int radius = t.arc_of_slot(3 * tr + ((loop_slot % 3) + 1) % 3);
    int loop = t.arc_of_slot(loop_slot);
    BlockAnnotation ann;
    ann.kind = BlockKind::IV;
    ann.from = v;
    ann.to = u;
    ann.extra = {std::min(radius, loop), std::max(radius, loop)};
    aq.blocks.push_back(ann);
  }
  return aq;
}

Triangulation mirror(const Triangulation& t) {
  return Triangulation::from_table(mirror_table(t.table()));
}

std::string canonical_key_oriented(const Triangulation& t) {
  return code_to_key(canonical_oriented_form(t.table()).code);
}

std::string canonical_key(const Triangulation& t) {
  std::string a = code_to_key(canonical_oriented_form(t.table()).code);
  std::string b = code_to_key(canonical_oriented_form(mirror_table(t.table())).code);
  return std::min(a, b);
}

EquivalenceResult is_equivalent(const Triangulation& a, const Triangulation& b) {
  EquivalenceResult out;
  if (a.triangle_count() != b.triangle_count()) return out;
  CanonicalForm ca = canonical_oriented_form(a.table());
  CanonicalForm cb = canonical_oriented_form(b.table());
  if (ca.code == cb.code) {
    std::vector<int> m(static_cast<size_t>(a.slot_count()));
    for (int ns = 0; ns < a.slot_count(); ++ns)
      m[static_cast<size_t>(ca.new2old[static_cast<size_t>(ns)])] =
          cb.new2old[static_cast<size_t>(ns)];
    out.preserving = std::move(m);
  }
  CanonicalForm cbm = canonical_oriented_form(mirror_table(b.table()));
  if (ca.code == cbm.code) {
    std::vector<int> m(static_cast<size_t>(a.slot_count()));
    for (int ns = 0; ns < a.slot_count(); ++ns)
      m[static_cast<size_t>(ca.new2old[static_cast<size_t>(ns)])] =
          mirror_slot(cbm.new2old[static_cast<size_t>(ns)]);
    out.reversing = std::move(m);
  }
  return out;
}

Triangulation subdivide_triangle(const Triangulation& t, int triangle) {
  if (triangle < 0 || triangle >= t.triangle_count())
    throw InvalidInput("triangle index out of range");
  int oldn = t.slot_count();
  int u1 = t.triangle_count(), u2 = u1 + 1;
  std::vector<int> M(static_cast<size_t>(oldn));
  std::iota(M.begin(), M.end(), 0);
  M[static_cast<size_t>(3 * triangle + 1)] = 3 * u1;
  M[static_cast<size_t>(3 * triangle + 2)] = 3 * u2;
  std::vector<int> glue(static_cast<size_t>(oldn + 6), -1);
  for (int s = 0; s < oldn; ++s) {
    int p = t.partner(s);
    glue[static_cast<size_t>(M[static_cast<size_t>(s)])] =
        p < 0 ? -1 : M[static_cast<size_t>(p)];
  }
  auto pair = [&](int x, int y) {
    glue[static_cast<size_t>(x)] = y;
    glue[static_cast<size_t>(y)] = x;
  };
  pair(3 * triangle + 1, 3 * u1 + 2);
  pair(3 * u1 + 1, 3 * u2 + 2);
  pair(3 * u2 + 1, 3 * triangle + 2);
  return Triangulation::from_table(std::move(glue));
}

Triangulation standard_triangulation(int genus, int punctures) {
  if (genus < 0) throw InvalidInput("negative genus");
  if (punctures < 3) throw InvalidInput("need at least three punctures");
  int m = 4 * genus + 2;
  std::vector<int> glue(static_cast<size_t>(3 * m), -1);
  auto pair = [&](int x, int y) {
    glue[static_cast<size_t>(x)] = y;
    glue[static_cast<size_t>(y)] = x;
  };
  for (int i = 0; i < m; ++i) pair(3 * i + 1, 3 * ((i + 1) % m) + 2);
  for (int i = 0; i < m / 2; ++i) pair(3 * i, 3 * (i + m / 2));
  Triangulation t = Triangulation::from_table(std::move(glue));
  for (int extra = 3; extra < punctures; ++extra) t = subdivide_triangle(t, 0);
  return t;
}

namespace {

struct Piece {
  std::vector<int> glue;            // standalone table
  std::vector<int> to_ambient;      // piece slot -> ambient slot
  std::vector<int> from_ambient;    // ambient slot -> piece slot or -1
};

Piece extract_piece(const std::vector<int>& cut_glue, const std::vector<char>& keep) {
  Piece p;
  int nt = static_cast<int>(cut_glue.size()) / 3;
  std::vector<int> tri_map(static_cast<size_t>(nt), -1);
  int cnt = 0;
  for (int t = 0; t < nt; ++t)
    if (keep[static_cast<size_t>(t)]) tri_map[static_cast<size_t>(t)] = cnt++;
  p.glue.assign(static_cast<size_t>(3 * cnt), -1);
  p.to_ambient.assign(static_cast<size_t>(3 * cnt), -1);
  p.from_ambient.assign(cut_glue.size(), -1);
  for (int t = 0; t < nt; ++t) {
    if (tri_map[static_cast<size_t>(t)] < 0) continue;
    for (int k = 0; k < 3; ++k) {
      int os = 3 * t + k;
      int ns = 3 * tri_map[static_cast<size_t>(t)] + k;
      p.to_ambient[static_cast<size_t>(ns)] = os;
      p.from_ambient[static_cast<size_t>(os)] = ns;
    }
  }
  for (int t = 0; t < nt; ++t) {
    if (tri_map[static_cast<size_t>(t)] < 0) continue;
    for (int k = 0; k < 3; ++k) {
      int os = 3 * t + k;
      int q = cut_glue[static_cast<size_t>(os)];
      p.glue[static_cast<size_t>(p.from_ambient[static_cast<size_t>(os)])] =
          q < 0 ? -1 : p.from_ambient[static_cast<size_t>(q)];
    }
  }
  return p;
}

}  // namespace

std::vector<Digon> find_digons(const Triangulation& t) {
  std::vector<Digon> out;
  int nt = t.triangle_count();

  // Two triangles glued along exactly two side pairs enclosing a puncture.
  for (int a = 0; a < nt; ++a) {
    std::map<int, std::vector<int>> partners;  // other triangle -> slots of a
    for (int k = 0; k < 3; ++k) {
      int p = t.partner(3 * a + k);
      if (p >= 0 && p / 3 > a) partners[p / 3].push_back(3 * a + k);
    }
    for (auto& [b, slots] : partners) {
      if (slots.size() != 2) continue;
      std::vector<int> piece_glue(6, -1);
      auto piece_slot = [&](int amb) {
        return amb / 3 == a ? amb % 3 : 3 + amb % 3;
      };
      for (int s : slots) {
        int q = t.partner(s);
        piece_glue[static_cast<size_t>(piece_slot(s))] = piece_slot(q);
        piece_glue[static_cast<size_t>(piece_slot(q))] = piece_slot(s);
      }
      SurfaceSignature sig = Triangulation::from_table(piece_glue).signature();
      if (!(sig.genus == 0 && sig.punctures == 1 && sig.boundary_components == 1 &&
            sig.boundary_marks == 2))
        continue;
      int ext_a = -1, ext_b = -1;
      for (int k = 0; k < 3; ++k) {
        if (piece_glue[static_cast<size_t>(k)] < 0) ext_a = 3 * a + k;
        if (piece_glue[static_cast<size_t>(3 + k)] < 0) ext_b = 3 * b + k;
      }
      Digon d;
      d.kind = DigonKind::Puncture;
      d.triangles = {a, b};
      int r0 = t.arc_of_slot(slots[0]);
      int r1 = t.arc_of_slot(slots[1]);
      d.shared_arcs = {std::min(r0, r1), std::max(r0, r1)};
      d.rim_slots = {ext_a, ext_b};
      d.poles = {t.vertex_of_corner(ext_a),
                 t.vertex_of_corner(3 * a + (ext_a % 3 + 1) % 3)};
      d.interior = {a, b};
      out.push_back(std::move(d));
    }
  }

  if (t.boundary_segment_count() == 0) return out;

  // Bordered digons: two arcs with the same pair of distinct endpoints whose
  // cut splits the surface, one part being a flat piece in the right shape.
  for (int alpha = 0; alpha < t.arc_count(); ++alpha) {
    auto [a1, a2] = t.arc_slots(alpha);
    auto ea = t.arc_endpoints(alpha);
    if (ea.first == ea.second) continue;
    int A = std::min(ea.first, ea.second), B = std::max(ea.first, ea.second);
    for (int beta = alpha + 1; beta < t.arc_count(); ++beta) {
      auto eb = t.arc_endpoints(beta);
      if (std::min(eb.first, eb.second) != A || std::max(eb.first, eb.second) != B) continue;
      auto [b1, b2] = t.arc_slots(beta);
      std::vector<int> cut = t.table();
      for (int s : {a1, a2, b1, b2}) cut[static_cast<size_t>(s)] = -1;
      std::vector<int> comp = triangle_components(cut);
      int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
      if (ncomp != 2) continue;
      if (comp[static_cast<size_t>(a1 / 3)] == comp[static_cast<size_t>(a2 / 3)]) continue;
      if (comp[static_cast<size_t>(b1 / 3)] == comp[static_cast<size_t>(b2 / 3)]) continue;
      for (int side = 0; side < 2; ++side) {
        std::vector<char> keep(comp.size(), 0);
        for (size_t i = 0; i < comp.size(); ++i) keep[i] = comp[i] == side;
        Piece piece = extract_piece(cut, keep);
        Triangulation ptri = Triangulation::from_table(piece.glue);
        SurfaceSignature sig = ptri.signature();
        if (sig.genus != 0 || sig.punctures != 0) continue;
        int cs1 = comp[static_cast<size_t>(a1 / 3)] == side
                      ? piece.from_ambient[static_cast<size_t>(a1)]
                      : piece.from_ambient[static_cast<size_t>(a2)];
        int cs2 = comp[static_cast<size_t>(b1 / 3)] == side
                      ? piece.from_ambient[static_cast<size_t>(b1)]
                      : piece.from_ambient[static_cast<size_t>(b2)];
        const std::vector<int>* circ = nullptr;
        for (const auto& c : ptri.boundary_circles())
          if (std::find(c.begin(), c.end(), cs1) != c.end()) circ = &c;
        if (!circ) continue;
        bool has_cs2 = std::find(circ->begin(), circ->end(), cs2) != circ->end();
        Digon d;
        if (sig.boundary_components == 2 && has_cs2 && circ->size() == 2) {
          d.kind = DigonKind::Free;
        } else if (sig.boundary_components == 1 && has_cs2 && circ->size() > 2) {
          d.kind = DigonKind::Rooted;
          bool sawA = false, sawB = false;
          for (int ps : *circ) {
            if (ps == cs1 || ps == cs2) continue;
            int amb = piece.to_ambient[static_cast<size_t>(ps)];
            int tail = t.vertex_of_corner(amb);
            int head = t.vertex_of_corner(3 * (amb / 3) + (amb % 3 + 1) % 3);
            for (int v : {tail, head}) {
              if (v == A) sawA = true;
              if (v == B) sawB = true;
            }
          }
          if (sawA == sawB) continue;
          d.root = sawA ? A : B;
        } else {
          continue;
        }
        d.poles = {A, B};
        d.rim_slots = {comp[static_cast<size_t>(a1 / 3)] == side ? a1 : a2,
                       comp[static_cast<size_t>(b1 / 3)] == side ? b1 : b2};
        for (size_t i = 0; i < comp.size(); ++i)
          if (keep[i]) d.interior.push_back(static_cast<int>(i));
        out.push_back(std::move(d));
      }
    }
  }
  return out;
}

namespace {

struct RemovalOutcome {
  Triangulation triangulation;
  std::vector<int> arc_map;
};

RemovalOutcome remove_digon_detailed(const Triangulation& t, const Digon& d) {
  int nt = t.triangle_count();
  std::vector<char> inside(static_cast<size_t>(nt), 0);
  for (int tr : d.interior) {
    if (tr < 0 || tr >= nt) throw InvalidInput("digon triangle out of range");
    inside[static_cast<size_t>(tr)] = 1;
  }
  int survivors = 0;
  std::vector<int> tri_map(static_cast<size_t>(nt), -1);
  for (int tr = 0; tr < nt; ++tr)
    if (!inside[static_cast<size_t>(tr)]) tri_map[static_cast<size_t>(tr)] = survivors++;
  if (survivors == 0) throw LastDigonError("surface consists of this digon only");

  int pa = t.partner(d.rim_slots[0]);
  int pb = t.partner(d.rim_slots[1]);
  auto outside = [&](int s) { return s >= 0 && !inside[static_cast<size_t>(s / 3)]; };
  if ((pa >= 0 && !outside(pa)) || (pb >= 0 && !outside(pb)))
    throw InvalidInput("digon rim does not border the rest of the surface");

  auto new_slot = [&](int s) {
    return 3 * tri_map[static_cast<size_t>(s / 3)] + s % 3;
  };
  std::vector<int> glue(static_cast<size_t>(3 * survivors), -1);
  for (int s = 0; s < t.slot_count(); ++s) {
    if (inside[static_cast<size_t>(s / 3)]) continue;
    int p = t.partner(s);
    if (p < 0 || s == pa || s == pb) continue;
    if (inside[static_cast<size_t>(p / 3)])
      throw InvalidInput("digon interior leaks past its rim");
    glue[static_cast<size_t>(new_slot(s))] = new_slot(p);
  }
  if (pa >= 0 && pb >= 0) {
    glue[static_cast<size_t>(new_slot(pa))] = new_slot(pb);
    glue[static_cast<size_t>(new_slot(pb))] = new_slot(pa);
  }

  RemovalOutcome res{Triangulation::from_table(std::move(glue)), {}};
  int merged = (pa >= 0 && pb >= 0) ? res.triangulation.arc_of_slot(new_slot(pa)) : -1;
  res.arc_map.assign(static_cast<size_t>(t.arc_count()), -1);
  for (int a = 0; a < t.arc_count(); ++a) {
    auto [s1, s2] = t.arc_slots(a);
    if (inside[static_cast<size_t>(s1 / 3)] || inside[static_cast<size_t>(s2 / 3)]) {
      res.arc_map[static_cast<size_t>(a)] = merged;
    } else {
      res.arc_map[static_cast<size_t>(a)] = res.triangulation.arc_of_slot(new_slot(s1));
    }
  }
  return res;
}

}  // namespace

Triangulation remove_digon(const Triangulation& t, const Digon& d) {
  return remove_digon_detailed(t, d).triangulation;
}

AssociateResult associate_triangulation(const Triangulation& t) {
  Triangulation cur = t;
  AssociateRecord rec;
  rec.projection.resize(static_cast<size_t>(t.arc_count()));
  std::iota(rec.projection.begin(), rec.projection.end(), 0);
  for (;;) {
    std::vector<Digon> ds = find_digons(cur);
    const Digon* pick = nullptr;
    for (const Digon& d : ds)
      if (d.kind != DigonKind::Free) {
        pick = &d;
        break;
      }
    if (!pick) break;
    std::optional<RemovalOutcome> step;
    try {
      step = remove_digon_detailed(cur, *pick);
    } catch (const LastDigonError&) {
      rec.sentinel = true;
      break;
    }
    rec.removals.push_back({*pick, step->arc_map});
    for (int& v : rec.projection)
      if (v >= 0) v = step->arc_map[static_cast<size_t>(v)];
    cur = std::move(step->triangulation);
  }
  return {std::move(cur), std::move(rec)};
}

void validate_structure(const PolygonGluing& pg) {
  int m = pg.sides();
  if (pg.genus < 0) throw InvalidInput("negative genus");
  if (static_cast<int>(pg.pairing.size()) != m) throw InvalidInput("pairing size mismatch");
  for (int i = 0; i < m; ++i) {
    int j = pg.pairing[static_cast<size_t>(i)];
    if (j < 0 || j >= m) throw InvalidInput("pairing target out of range");
    if (j == i) throw InvalidInput("side paired with itself");
    if (pg.pairing[static_cast<size_t>(j)] != i) throw InvalidInput("pairing is not an involution");
  }
}

namespace {

std::vector<int> rim_orbit_ids(const PolygonGluing& pg) {
  int m = pg.sides();
  UnionFind uf(m);
  for (int i = 0; i < m; ++i) {
    int j = pg.pairing[static_cast<size_t>(i)];
    if (j < i) continue;
    uf.unite(i, (j + 1) % m);
    uf.unite((i + 1) % m, j);
  }
  std::vector<int> ids(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) ids[static_cast<size_t>(i)] = uf.find(i);
  return ids;
}

}  // namespace

bool polygon_gluing_valid(const PolygonGluing& pg) {
  validate_structure(pg);
  int m = pg.sides();
  std::vector<int> orb = rim_orbit_ids(pg);
  std::set<int> distinct(orb.begin(), orb.end());
  if (distinct.size() != 2) return false;
  for (int i = 0; i < m; ++i)
    if (orb[static_cast<size_t>(i)] == orb[static_cast<size_t>((i + 1) % m)]) return false;
  return true;
}

bool is_all_opposite(const PolygonGluing& pg) {
  validate_structure(pg);
  int m = pg.sides();
  for (int i = 0; i < m; ++i)
    if (pg.pairing[static_cast<size_t>(i)] != (i + m / 2) % m) return false;
  return true;
}

Triangulation realize_polygon_gluing(const PolygonGluing& pg) {
  validate_structure(pg);
  int m = pg.sides();
  std::vector<int> glue(static_cast<size_t>(3 * m), -1);
  auto pair = [&](int x, int y) {
    glue[static_cast<size_t>(x)] = y;
    glue[static_cast<size_t>(y)] = x;
  };
  for (int i = 0; i < m; ++i) pair(3 * i + 1, 3 * ((i + 1) % m) + 2);
  for (int i = 0; i < m; ++i)
    if (pg.pairing[static_cast<size_t>(i)] > i) pair(3 * i, 3 * pg.pairing[static_cast<size_t>(i)]);
  return Triangulation::from_table(std::move(glue));
}

std::vector<PolygonGluing> admissible_regluings(const PolygonGluing& pg) {
  validate_structure(pg);
  int m = pg.sides();
  std::vector<int> orb = rim_orbit_ids(pg);
  std::vector<PolygonGluing> out;
  std::set<std::string> seen;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      if (orb[static_cast<size_t>(a)] == orb[static_cast<size_t>(b)]) continue;
      // part A holds sides a..b-1, part B the rest; reattach along a paired
      // couple (s in A, sb in B); the two chord copies become the new pair.
      std::vector<int> B_list;
      for (int i = b; i < m; ++i) B_list.push_back(i);
      for (int i = 0; i < a; ++i) B_list.push_back(i);
      std::vector<int> posB(static_cast<size_t>(m), -1);
      for (size_t i = 0; i < B_list.size(); ++i)
        posB[static_cast<size_t>(B_list[i])] = static_cast<int>(i);
      for (int s = a; s < b; ++s) {
        int sb = pg.pairing[static_cast<size_t>(s)];
        if (sb >= a && sb < b) continue;
        std::vector<int> tokens;
        for (int i = s + 1; i < b; ++i) tokens.push_back(i);
        tokens.push_back(-1);
        for (int i = a; i < s; ++i) tokens.push_back(i);
        int pb = posB[static_cast<size_t>(sb)];
        for (size_t i = static_cast<size_t>(pb) + 1; i < B_list.size(); ++i)
          tokens.push_back(B_list[i]);
        tokens.push_back(-2);
        for (size_t i = 0; i < static_cast<size_t>(pb); ++i) tokens.push_back(B_list[i]);
        std::vector<int> pos(static_cast<size_t>(m), -1);
        int d1 = -1, d2 = -1;
        for (size_t i = 0; i < tokens.size(); ++i) {
          if (tokens[i] == -1)
            d1 = static_cast<int>(i);
          else if (tokens[i] == -2)
            d2 = static_cast<int>(i);
          else
            pos[static_cast<size_t>(tokens[i])] = static_cast<int>(i);
        }
        PolygonGluing ng;
        ng.genus = pg.genus;
        ng.pairing.assign(static_cast<size_t>(m), -1);
        ng.pairing[static_cast<size_t>(d1)] = d2;
        ng.pairing[static_cast<size_t>(d2)] = d1;
        for (int u : tokens) {
          if (u < 0) continue;
          int v = pg.pairing[static_cast<size_t>(u)];
          ng.pairing[static_cast<size_t>(pos[static_cast<size_t>(u)])] =
              pos[static_cast<size_t>(v)];
        }
        validate_structure(ng);
        std::string key = polygon_canonical_key(ng);
        if (seen.insert(key).second) out.push_back(std::move(ng));
      }
    }
  }
  return out;
}

std::string polygon_canonical_key(const PolygonGluing& pg) {
  validate_structure(pg);
  int m = pg.sides();
  auto displacement = [&](const std::vector<int>& pairing) {
    std::vector<int> d(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
      d[static_cast<size_t>(i)] = ((pairing[static_cast<size_t>(i)] - i) % m + m) % m;
    return d;
  };
  std::vector<int> refl(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i)
    refl[static_cast<size_t>(i)] = m - 1 - pg.pairing[static_cast<size_t>(m - 1 - i)];
  std::vector<int> best;
  for (const std::vector<int>& d : {displacement(pg.pairing), displacement(refl)}) {
    for (int r = 0; r < m; ++r) {
      std::vector<int> rot(static_cast<size_t>(m));
      for (int i = 0; i < m; ++i) rot[static_cast<size_t>(i)] = d[static_cast<size_t>((i + r) % m)];
      if (best.empty() || rot < best) best = std::move(rot);
    }
  }
  std::string s;
  for (int v : best) s.push_back(static_cast<char>('a' + v));
  return s;
}

FlipGraph loop_free_flip_graph(const Triangulation& start, size_t max_nodes) {
  if (max_nodes == 0) throw InvalidInput("node budget must be positive");
  if (!is_loop_free(start)) throw InvalidInput("start triangulation has a loop");
  FlipGraph g;
  std::map<std::string, int> index;
  std::queue<int> todo;
  g.nodes.push_back(start);
  g.keys.push_back(canonical_key(start));
  index[g.keys[0]] = 0;
  todo.push(0);
  while (!todo.empty()) {
    int i = todo.front();
    todo.pop();
    Triangulation cur = g.nodes[static_cast<size_t>(i)];
    for (int arc : loop_free_flips(cur)) {
      Triangulation nxt = flip(cur, arc);
      std::string key = canonical_key(nxt);
      auto it = index.find(key);
      if (it == index.end()) {
        if (g.nodes.size() >= max_nodes) {
          g.exhausted = true;
          continue;
        }
        int id = static_cast<int>(g.nodes.size());
        g.nodes.push_back(nxt);
        g.keys.push_back(key);
        index.emplace(std::move(key), id);
        todo.push(id);
        g.edges.push_back({i, id, arc});
      } else {
        g.edges.push_back({i, it->second, arc});
      }
    }
  }
  return g;
}

}  // namespace qcox
