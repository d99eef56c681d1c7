#include "qcox/surface.hpp"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "qcox/errors.hpp"
#include "qcox/presentation.hpp"

using namespace qcox;

namespace {

// Sphere with three punctures: two triangles glued along all three sides.
Triangulation theta() { return Triangulation::from_gluing(2, {{0, 3}, {1, 5}, {2, 4}}); }

// Torus with one puncture: the other way to glue two triangles completely.
Triangulation punctured_torus() {
  return Triangulation::from_gluing(2, {{0, 3}, {1, 4}, {2, 5}});
}

// Annulus with one mark on each boundary circle.
Triangulation annulus_two_marked() { return Triangulation::from_gluing(2, {{0, 3}, {1, 4}}); }

// Disk with two boundary marks and one puncture.
Triangulation punctured_digon() { return Triangulation::from_gluing(2, {{0, 3}, {1, 5}}); }

// Disk with one boundary mark and one puncture: a single folded triangle.
Triangulation punctured_monogon() { return Triangulation::from_gluing(1, {{0, 1}}); }

// Fan triangulations of marked disks.
Triangulation pentagon() { return Triangulation::from_gluing(3, {{1, 5}, {4, 8}}); }
Triangulation hexagon_disk() { return Triangulation::from_gluing(4, {{1, 5}, {4, 8}, {7, 11}}); }

// Annulus with marks on both circles plus a puncture on each side of the
// inner hole; five interior arcs.
Triangulation fig_ann() {
  return Triangulation::from_gluing(4, {{0, 6}, {1, 3}, {4, 9}, {2, 5}, {7, 10}});
}

// Two punctures joined by a pair of parallel arcs that enclose one boundary
// circle; a second pair of arcs fences off the other circle the same way.
Triangulation free_digon_surface() {
  return Triangulation::from_gluing(
      6, {{0, 9}, {1, 4}, {2, 6}, {3, 8}, {5, 12}, {10, 15}, {11, 13}, {14, 16}});
}

Triangulation relabel(const Triangulation& t, std::mt19937& rng) {
  int nt = t.triangle_count();
  std::vector<int> perm(static_cast<size_t>(nt));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> rot(static_cast<size_t>(nt));
  for (int& r : rot) r = static_cast<int>(rng() % 3);
  auto image = [&](int s) {
    int tri = s / 3, k = s % 3;
    return 3 * perm[static_cast<size_t>(tri)] + (k + rot[static_cast<size_t>(tri)]) % 3;
  };
  std::vector<int> glue(static_cast<size_t>(t.slot_count()), -1);
  for (int s = 0; s < t.slot_count(); ++s) {
    int p = t.partner(s);
    glue[static_cast<size_t>(image(s))] = p < 0 ? -1 : image(p);
  }
  return Triangulation::from_table(std::move(glue));
}

Quiver relabel_quiver(const Quiver& q, const std::vector<int>& perm) {
  Quiver r(q.size());
  for (auto [i, j, m] : q.arrows())
    r.set_arrow(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)], m);
  return r;
}

void check_slot_bijection(const Triangulation& a, const Triangulation& b,
                          const std::vector<int>& m, bool preserving) {
  REQUIRE(static_cast<int>(m.size()) == a.slot_count());
  REQUIRE(a.slot_count() == b.slot_count());
  std::vector<char> seen(static_cast<size_t>(b.slot_count()), 0);
  for (int s = 0; s < a.slot_count(); ++s) {
    int ms = m[static_cast<size_t>(s)];
    REQUIRE(ms >= 0);
    REQUIRE(ms < b.slot_count());
    CHECK_FALSE(seen[static_cast<size_t>(ms)]);
    seen[static_cast<size_t>(ms)] = 1;
    int p = a.partner(s);
    CHECK(b.partner(ms) == (p < 0 ? -1 : m[static_cast<size_t>(p)]));
  }
  int turn = preserving ? 1 : 2;
  for (int s = 0; s < a.slot_count(); ++s) {
    int nxt = 3 * (s / 3) + (s % 3 + 1) % 3;
    int ms = m[static_cast<size_t>(s)];
    CHECK(m[static_cast<size_t>(nxt)] == 3 * (ms / 3) + (ms % 3 + turn) % 3);
  }
}

}  // namespace

TEST_CASE("gluing tables are validated on construction") {
  CHECK_THROWS_AS(Triangulation::from_gluing(1, {{0, 5}}), InvalidInput);
  CHECK_THROWS_AS(Triangulation::from_gluing(1, {{0, 0}}), InvalidInput);
  CHECK_THROWS_AS(Triangulation::from_gluing(2, {{0, 1}, {3, 4}}), InvalidInput);  // disconnected
  CHECK_THROWS_AS(Triangulation::from_table({0, -1, -1}), InvalidInput);
  CHECK_THROWS_AS(Triangulation::from_table({-1, -1}), InvalidInput);
}

TEST_CASE("small fixtures have the expected shape") {
  Triangulation th = theta();
  CHECK(th.signature() == SurfaceSignature{0, 3, 0, 0});
  CHECK(th.arc_count() == 3);
  CHECK(th.vertex_count() == 3);
  CHECK(is_loop_free(th));
  for (int v = 0; v < 3; ++v) CHECK_FALSE(th.vertex_on_boundary(v));

  CHECK(punctured_torus().signature() == SurfaceSignature{1, 1, 0, 0});
  CHECK(punctured_torus().vertex_count() == 1);

  Triangulation ann = annulus_two_marked();
  CHECK(ann.signature() == SurfaceSignature{0, 0, 2, 2});
  CHECK(ann.boundary_circles().size() == 2);
  CHECK(ann.boundary_segment_count() == 2);

  CHECK(punctured_digon().signature() == SurfaceSignature{0, 1, 1, 2});

  Triangulation mono = punctured_monogon();
  CHECK(mono.signature() == SurfaceSignature{0, 1, 1, 1});
  CHECK(mono.arc_count() == 1);
  CHECK(mono.is_self_folded(0));
  CHECK_FALSE(mono.is_loop(0));  // standalone fold: the arc is the radius
  CHECK(loop_arcs(mono).empty());

  CHECK(pentagon().signature() == SurfaceSignature{0, 0, 1, 5});
  CHECK(pentagon().arc_count() == 2);
  CHECK(hexagon_disk().signature() == SurfaceSignature{0, 0, 1, 6});

  Triangulation fa = fig_ann();
  CHECK(fa.signature() == SurfaceSignature{0, 1, 2, 2});
  CHECK(fa.arc_count() == 5);

  CHECK(free_digon_surface().signature() == SurfaceSignature{0, 2, 2, 2});
}

TEST_CASE("standard triangulations cover every genus and puncture count") {
  struct Row {
    int g, p, arcs, tris;
  };
  for (Row r : {Row{0, 3, 3, 2}, Row{0, 4, 6, 4}, Row{0, 5, 9, 6}, Row{1, 3, 9, 6},
                Row{1, 4, 12, 8}, Row{2, 3, 15, 10}}) {
    Triangulation t = standard_triangulation(r.g, r.p);
    CHECK(t.signature() == SurfaceSignature{r.g, r.p, 0, 0});
    CHECK(t.arc_count() == r.arcs);
    CHECK(t.triangle_count() == r.tris);
    CHECK(is_loop_free(t));
  }
  CHECK_THROWS_AS(standard_triangulation(0, 2), InvalidInput);
  CHECK_THROWS_AS(standard_triangulation(-1, 5), InvalidInput);
}

TEST_CASE("subdividing either theta triangle gives the four-punctured sphere") {
  Triangulation tetra = standard_triangulation(0, 4);
  CHECK(tetra.signature() == SurfaceSignature{0, 4, 0, 0});
  Triangulation other = subdivide_triangle(theta(), 1);
  CHECK(other.signature() == SurfaceSignature{0, 4, 0, 0});
  CHECK(is_equivalent(tetra, other).equivalent());
}

TEST_CASE("flips are involutive and track arcs") {
  std::vector<Triangulation> fixtures{theta(),   punctured_torus(),          fig_ann(),
                                      pentagon(), standard_triangulation(0, 4),
                                      standard_triangulation(1, 3)};
  for (const Triangulation& t : fixtures) {
    for (int a = 0; a < t.arc_count(); ++a) {
      auto [s1, s2] = t.arc_slots(a);
      if (s1 / 3 == s2 / 3) {
        CHECK_THROWS_AS(flip(t, a), TaggedFlipError);
        continue;
      }
      FlipResult fr = flip_detailed(t, a);
      CHECK(fr.triangulation.signature() == t.signature());
      CHECK(fr.triangulation.arc_count() == t.arc_count());
      std::set<int> hit(fr.arc_map.begin(), fr.arc_map.end());
      CHECK(static_cast<int>(hit.size()) == t.arc_count());  // bijection on arcs
      Triangulation back = flip(fr.triangulation, fr.arc_map[static_cast<size_t>(a)]);
      CHECK(is_equivalent(back, t).equivalent());
    }
    int bd = t.boundary_segment_count();
    if (bd > 0) CHECK_THROWS_AS(flip(t, t.arc_count()), BoundaryArcError);
    CHECK_THROWS_AS(flip(t, t.arc_count() + bd), InvalidInput);
  }
}

TEST_CASE("every flip in the tetrahedron stays loop-free and creates digon pairs") {
  Triangulation tetra = standard_triangulation(0, 4);
  CHECK(loop_free_flips(tetra).size() == 6);
  CHECK(find_digons(tetra).empty());
  Triangulation flipped = flip(tetra, 0);
  CHECK(is_loop_free(flipped));
  CHECK_FALSE(is_equivalent(tetra, flipped).equivalent());
  std::vector<Digon> ds = find_digons(flipped);
  REQUIRE(ds.size() == 2);
  for (const Digon& d : ds) {
    CHECK(d.kind == DigonKind::Puncture);
    CHECK(remove_digon(flipped, d).signature() == SurfaceSignature{0, 3, 0, 0});
  }
}

TEST_CASE("flipping any theta arc folds both triangles") {
  for (int a = 0; a < 3; ++a) {
    Triangulation f = flip(theta(), a);
    CHECK(f.signature() == SurfaceSignature{0, 3, 0, 0});
    CHECK(f.self_folded_triangles().size() == 2);
    AnnotatedQuiver aq = quiver_of(f);
    CHECK_FALSE(aq.weighted());
    CHECK(aq.quiver().arrows().empty());  // radii inherit only cancelled arrows
    CHECK(aq.blocks.empty());             // mutual folds carry no block
  }
}

TEST_CASE("adjacency quivers match hand-computed ones") {
  AnnotatedQuiver th = quiver_of(theta());
  CHECK(th.quiver().size() == 3);
  CHECK(th.quiver().arrows().empty());  // both triangles contribute opposite arrows

  AnnotatedQuiver tor = quiver_of(punctured_torus());
  CHECK(tor.quiver().size() == 3);
  CHECK(tor.quiver().entry(0, 1) == 2);
  CHECK(tor.quiver().entry(1, 2) == 2);
  CHECK(tor.quiver().entry(2, 0) == 2);

  AnnotatedQuiver ann = quiver_of(annulus_two_marked());
  CHECK(ann.quiver().size() == 2);
  CHECK(ann.quiver().entry(0, 1) == 2);

  AnnotatedQuiver fa = quiver_of(fig_ann());
  REQUIRE_FALSE(fa.weighted());
  CHECK(fa.blocks.empty());
  Quiver expected = Quiver::from_arrows(
      5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}, {0, 4, 1}, {2, 4, 1}});
  CHECK(is_isomorphic(fa.quiver(), expected));
}

TEST_CASE("quivers of relabeled triangulations are isomorphic") {
  std::mt19937 rng(42);
  for (const Triangulation& t :
       {theta(), fig_ann(), standard_triangulation(0, 4), standard_triangulation(1, 3)}) {
    Triangulation r = relabel(t, rng);
    CHECK(is_isomorphic(quiver_of(t).quiver(), quiver_of(r).quiver()));
  }
}

TEST_CASE("a fold inside a larger surface yields a block annotation") {
  Triangulation tetra = standard_triangulation(0, 4);
  Triangulation flipped = flip(tetra, 0);
  Digon d = find_digons(flipped)[0];
  Triangulation folded = flip(flipped, d.shared_arcs[0]);
  REQUIRE(folded.self_folded_triangles().size() == 1);
  int ft = folded.self_folded_triangles()[0];

  std::vector<int> loops = loop_arcs(folded);
  REQUIRE(loops.size() == 1);
  int radius = -1;
  for (int a = 0; a < folded.arc_count(); ++a) {
    auto [s1, s2] = folded.arc_slots(a);
    if (s1 / 3 == ft && s2 / 3 == ft) radius = a;
  }
  REQUIRE(radius >= 0);
  CHECK_THROWS_AS(flip(folded, radius), TaggedFlipError);
  CHECK_FALSE(is_loop_free(folded));
  std::vector<int> moves = loop_free_flips(folded);
  CHECK(std::find(moves.begin(), moves.end(), radius) == moves.end());

  AnnotatedQuiver aq = quiver_of(folded);
  REQUIRE(aq.blocks.size() == 1);
  CHECK(aq.blocks[0].kind == BlockKind::IV);
  CHECK_NOTHROW(validate(aq));
  Presentation p = presentation_of(aq);
  CHECK(p.ngens == folded.arc_count());
  CHECK_FALSE(p.relators.empty());

  // Flipping the loop acts on the quiver as mutation at the loop vertex.
  int loop = loops[0];
  FlipResult fr = flip_detailed(folded, loop);
  Quiver expected = relabel_quiver(mutate(aq.quiver(), loop), fr.arc_map);
  CHECK(expected == quiver_of(fr.triangulation).quiver());
}

TEST_CASE("flips act on loop-free quivers as mutations") {
  for (const Triangulation& t : {standard_triangulation(0, 4), fig_ann(), punctured_torus(),
                                 standard_triangulation(1, 3)}) {
    Quiver q = quiver_of(t).quiver();
    for (int a : loop_free_flips(t)) {
      FlipResult fr = flip_detailed(t, a);
      Quiver expected = relabel_quiver(mutate(q, a), fr.arc_map);
      CHECK(expected == quiver_of(fr.triangulation).quiver());
    }
  }
}

TEST_CASE("canonical keys are relabeling and mirror invariants") {
  std::mt19937 rng(7);
  for (const Triangulation& t : {theta(), punctured_torus(), annulus_two_marked(), fig_ann(),
                                 standard_triangulation(0, 4), standard_triangulation(1, 3)}) {
    for (int trial = 0; trial < 4; ++trial) {
      Triangulation r = relabel(t, rng);
      CHECK(canonical_key(t) == canonical_key(r));
      CHECK(canonical_key_oriented(t) == canonical_key_oriented(r));
      EquivalenceResult eq = is_equivalent(t, r);
      REQUIRE(eq.preserving.has_value());
      check_slot_bijection(t, r, *eq.preserving, true);
    }
    Triangulation m = mirror(t);
    CHECK(canonical_key(t) == canonical_key(m));
    EquivalenceResult eq = is_equivalent(t, m);
    REQUIRE(eq.reversing.has_value());
    check_slot_bijection(t, m, *eq.reversing, false);
  }
}

TEST_CASE("distinct surfaces and distinct triangulations get distinct keys") {
  CHECK(canonical_key(theta()) != canonical_key(punctured_torus()));
  CHECK(canonical_key(theta()) != canonical_key(flip(theta(), 0)));
  CHECK_FALSE(is_equivalent(theta(), punctured_torus()).equivalent());
  Triangulation tetra = standard_triangulation(0, 4);
  CHECK(canonical_key(tetra) != canonical_key(flip(tetra, 0)));
}

TEST_CASE("digon census of the bordered fixtures") {
  CHECK(find_digons(theta()).empty());
  CHECK(find_digons(punctured_monogon()).empty());

  std::vector<Digon> ann = find_digons(annulus_two_marked());
  REQUIRE(ann.size() == 2);
  for (const Digon& d : ann) {
    CHECK(d.kind == DigonKind::Rooted);
    CHECK(d.interior.size() == 1);
    CHECK(annulus_two_marked().vertex_on_boundary(d.root));
    Triangulation rem = remove_digon(annulus_two_marked(), d);
    CHECK(rem.signature() == SurfaceSignature{0, 1, 1, 1});
    CHECK(rem.is_self_folded(0));
  }

  std::vector<Digon> fd = find_digons(free_digon_surface());
  int free_count = 0, rooted_count = 0;
  for (const Digon& d : fd) {
    if (d.kind == DigonKind::Free) ++free_count;
    if (d.kind == DigonKind::Rooted) {
      ++rooted_count;
      CHECK(free_digon_surface().vertex_on_boundary(d.root));
    }
  }
  CHECK(free_count == 2);  // both sides of the parallel puncture-to-puncture pair
  CHECK(rooted_count == 2);
}

TEST_CASE("the punctured digon is its own last digon") {
  Triangulation pd = punctured_digon();
  std::vector<Digon> ds = find_digons(pd);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].kind == DigonKind::Puncture);
  CHECK_THROWS_AS(remove_digon(pd, ds[0]), LastDigonError);
  AssociateResult ar = associate_triangulation(pd);
  CHECK(ar.record.sentinel);
  CHECK(ar.record.removals.empty());
  CHECK(ar.triangulation == pd);
}

TEST_CASE("associate collapses digons to a fixed point") {
  AssociateResult th = associate_triangulation(theta());
  CHECK(th.record.removals.empty());
  CHECK_FALSE(th.record.sentinel);

  Triangulation flipped = flip(standard_triangulation(0, 4), 0);
  AssociateResult fl = associate_triangulation(flipped);
  CHECK(fl.record.removals.size() == 1);
  CHECK(fl.triangulation.signature() == SurfaceSignature{0, 3, 0, 0});
  CHECK_FALSE(fl.record.sentinel);
  for (int v : fl.record.projection) {
    CHECK(v >= 0);
    CHECK(v < fl.triangulation.arc_count());
  }

  AssociateResult an = associate_triangulation(annulus_two_marked());
  CHECK(an.record.removals.size() == 1);
  CHECK(an.triangulation.signature() == SurfaceSignature{0, 1, 1, 1});

  // Cascade: a rooted removal turns the inner mark into a puncture and exposes
  // puncture digons; the fixed point is a punctured monogon around one mark.
  AssociateResult fr = associate_triangulation(free_digon_surface());
  REQUIRE(fr.record.removals.size() == 3);
  CHECK(fr.record.removals[0].digon.kind == DigonKind::Rooted);
  CHECK(fr.record.removals[1].digon.kind == DigonKind::Puncture);
  CHECK(fr.record.removals[2].digon.kind == DigonKind::Puncture);
  CHECK(fr.triangulation.signature() == SurfaceSignature{0, 1, 1, 1});
  CHECK(is_equivalent(fr.triangulation, punctured_monogon()).equivalent());
  CHECK_FALSE(fr.record.sentinel);

  // After association only free digons may survive.
  for (const Triangulation& t : {fl.triangulation, an.triangulation, fr.triangulation})
    for (const Digon& d : find_digons(t)) CHECK(d.kind == DigonKind::Free);
}

TEST_CASE("flip graphs of small disks have the known class counts") {
  FlipGraph pent = loop_free_flip_graph(pentagon(), 100);
  CHECK_FALSE(pent.exhausted);
  CHECK(pent.nodes.size() == 1);
  CHECK(pent.edges.size() == 2);

  FlipGraph hex = loop_free_flip_graph(hexagon_disk(), 100);
  CHECK_FALSE(hex.exhausted);
  CHECK(hex.nodes.size() == 3);  // fan, snake, pinwheel
  CHECK(hex.edges.size() == 9);
  std::set<std::string> keys(hex.keys.begin(), hex.keys.end());
  CHECK(keys.size() == 3);
  for (const FlipGraph::Edge& e : hex.edges) {
    CHECK(e.from >= 0);
    CHECK(e.from < 3);
    CHECK(e.to >= 0);
    CHECK(e.to < 3);
  }

  FlipGraph capped = loop_free_flip_graph(hexagon_disk(), 2);
  CHECK(capped.exhausted);
  CHECK(capped.nodes.size() == 2);
}

TEST_CASE("polygon gluings validate, realize, and reglue") {
  PolygonGluing hex{1, {3, 4, 5, 0, 1, 2}};
  CHECK_NOTHROW(validate_structure(hex));
  CHECK(polygon_gluing_valid(hex));
  CHECK(is_all_opposite(hex));
  Triangulation r = realize_polygon_gluing(hex);
  CHECK(r.signature() == SurfaceSignature{1, 3, 0, 0});
  CHECK(is_equivalent(r, standard_triangulation(1, 3)).equivalent());

  PolygonGluing dec{2, {5, 6, 7, 8, 9, 0, 1, 2, 3, 4}};
  CHECK(polygon_gluing_valid(dec));
  CHECK(realize_polygon_gluing(dec).signature() == SurfaceSignature{2, 3, 0, 0});

  PolygonGluing adjacent{1, {1, 0, 3, 2, 5, 4}};
  CHECK_NOTHROW(validate_structure(adjacent));
  CHECK_FALSE(polygon_gluing_valid(adjacent));

  CHECK_THROWS_AS(validate_structure(PolygonGluing{1, {0, 1, 2, 3, 4, 5}}), InvalidInput);
  CHECK_THROWS_AS(validate_structure(PolygonGluing{1, {3, 4, 5}}), InvalidInput);
  CHECK_THROWS_AS(validate_structure(PolygonGluing{1, {3, 4, 5, 0, 1, 9}}), InvalidInput);

  std::vector<PolygonGluing> next = admissible_regluings(hex);
  CHECK_FALSE(next.empty());
  std::set<std::string> seen;
  for (const PolygonGluing& pg : next) {
    CHECK_NOTHROW(validate_structure(pg));
    CHECK(polygon_gluing_valid(pg));
    CHECK(realize_polygon_gluing(pg).signature() == SurfaceSignature{1, 3, 0, 0});
    CHECK(seen.insert(polygon_canonical_key(pg)).second);  // deduplicated
  }
}

TEST_CASE("polygon keys are rotation and reflection invariants") {
  PolygonGluing hex{1, {3, 4, 5, 0, 1, 2}};
  for (const PolygonGluing& base : admissible_regluings(hex)) {
    int m = base.sides();
    for (int r = 0; r < m; ++r) {
      PolygonGluing rot{base.genus, std::vector<int>(static_cast<size_t>(m))};
      for (int i = 0; i < m; ++i)
        rot.pairing[static_cast<size_t>(i)] =
            ((base.pairing[static_cast<size_t>((i + r) % m)] - r) % m + m) % m;
      CHECK(polygon_canonical_key(rot) == polygon_canonical_key(base));
    }
    PolygonGluing refl{base.genus, std::vector<int>(static_cast<size_t>(m))};
    for (int i = 0; i < m; ++i)
      refl.pairing[static_cast<size_t>(i)] =
          m - 1 - base.pairing[static_cast<size_t>(m - 1 - i)];
    CHECK(polygon_canonical_key(refl) == polygon_canonical_key(base));
  }
}
