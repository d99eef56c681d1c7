#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qcox/quiver.hpp"

using namespace qcox;

namespace {

Quiver path3() { return Quiver::from_arrows(3, {{0, 1, 1}, {1, 2, 1}}); }

Quiver cycle3() { return Quiver::from_arrows(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}); }

Quiver markov() { return Quiver::from_arrows(3, {{0, 1, 2}, {1, 2, 2}, {2, 0, 2}}); }

Quiver random_quiver(std::mt19937& rng, int n, int maxmult) {
  Quiver q(n);
  std::uniform_int_distribution<int> val(-maxmult, maxmult);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int v = val(rng);
      if (v > 0) q.set_arrow(i, j, v);
      if (v < 0) q.set_arrow(j, i, -v);
    }
  return q;
}

Quiver relabel(const Quiver& q, const std::vector<int>& p) {
  Quiver out(q.size());
  for (int i = 0; i < q.size(); ++i)
    for (int j = 0; j < q.size(); ++j)
      if (q.entry(i, j) > 0)
        out.set_arrow(p[static_cast<size_t>(i)], p[static_cast<size_t>(j)], q.entry(i, j));
  return out;
}

}  // namespace

TEST_CASE("mutation of the oriented path") {
  // at the middle vertex the path closes into an oriented triangle
  CHECK(mutate(path3(), 1) ==
        Quiver::from_arrows(3, {{1, 0, 1}, {2, 1, 1}, {0, 2, 1}}));
  // at an endpoint only the incident arrow turns around
  CHECK(mutate(path3(), 0) == Quiver::from_arrows(3, {{1, 0, 1}, {1, 2, 1}}));
  CHECK(mutate(path3(), 2) == Quiver::from_arrows(3, {{0, 1, 1}, {2, 1, 1}}));
}

TEST_CASE("mutation of the oriented triangle removes the closing arrow") {
  CHECK(mutate(cycle3(), 0) == Quiver::from_arrows(3, {{1, 0, 1}, {0, 2, 1}}));
}

TEST_CASE("the double-arrow triangle mutates to itself up to relabeling") {
  Quiver m = mutate(markov(), 0);
  CHECK(m != markov());
  CHECK(is_isomorphic(m, markov()));
}

TEST_CASE("mutation is an involution and preserves skew-symmetry") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Quiver q = random_quiver(rng, 4, 2);
    for (int k = 0; k < 4; ++k) {
      Quiver m = mutate(q, k);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(m.entry(i, j) == -m.entry(j, i));
      CHECK(mutate(m, k) == q);
    }
  }
}

TEST_CASE("canonical form is a relabeling invariant") {
  std::mt19937 rng(11);
  std::vector<int> p{0, 1, 2, 3, 4};
  for (int trial = 0; trial < 50; ++trial) {
    Quiver q = random_quiver(rng, 5, 2);
    std::shuffle(p.begin(), p.end(), rng);
    Quiver r = relabel(q, p);
    CHECK(canonical_form(q) == canonical_form(r));
    auto iso = find_isomorphism(q, r);
    REQUIRE(iso.has_value());
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        CHECK(r.entry((*iso)[static_cast<size_t>(i)], (*iso)[static_cast<size_t>(j)]) ==
              q.entry(i, j));
  }
}

TEST_CASE("non-isomorphic quivers are told apart") {
  CHECK_FALSE(is_isomorphic(path3(), cycle3()));
  CHECK(canonical_form(path3()) != canonical_form(cycle3()));
  // sink-in-the-middle and source-in-the-middle paths are not isomorphic
  Quiver sink = Quiver::from_arrows(3, {{0, 1, 1}, {2, 1, 1}});
  Quiver source = Quiver::from_arrows(3, {{1, 0, 1}, {1, 2, 1}});
  CHECK_FALSE(is_isomorphic(sink, source));
}

TEST_CASE("mutation class of the rank-2 arrow is a single quiver") {
  Quiver a2 = Quiver::from_arrows(2, {{0, 1, 1}});
  MutationClass mc = mutation_class(a2, 100);
  CHECK_FALSE(mc.exhausted);
  CHECK(mc.reps.size() == 1);
}

TEST_CASE("mutation class of the oriented path on three vertices") {
  // linear path (reversal is a relabeling), sink path, source path, triangle
  MutationClass mc = mutation_class(path3(), 100);
  CHECK_FALSE(mc.exhausted);
  CHECK(mc.reps.size() == 4);
  MutationClass limited = mutation_class(path3(), 2);
  CHECK(limited.exhausted);
  CHECK(limited.reps.size() == 2);
}

TEST_CASE("chordless oriented cycle enumeration") {
  CHECK(chordless_oriented_cycles(path3()).empty());
  auto c3 = chordless_oriented_cycles(cycle3());
  REQUIRE(c3.size() == 1);
  CHECK(c3[0] == std::vector<int>{0, 1, 2});

  // square with a chord: only the triangle through the chord is chordless
  Quiver sq = Quiver::from_arrows(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}, {0, 2, 1}});
  auto cs = chordless_oriented_cycles(sq);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0] == std::vector<int>{0, 2, 3});

  // chordless square: the 4-cycle itself
  Quiver sq2 = Quiver::from_arrows(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
  auto cs2 = chordless_oriented_cycles(sq2);
  REQUIRE(cs2.size() == 1);
  CHECK(cs2[0] == std::vector<int>{0, 1, 2, 3});

  // orientation matters: an alternating square has no oriented cycle
  Quiver alt = Quiver::from_arrows(4, {{0, 1, 1}, {2, 1, 1}, {2, 3, 1}, {0, 3, 1}});
  CHECK(chordless_oriented_cycles(alt).empty());
}

TEST_CASE("weighted diagram cycles include weight-2 arrows") {
  Diagram d = Diagram::from_arrows(3, {{0, 1, 2}, {1, 2, 1}, {2, 0, 1}});
  auto cs = chordless_oriented_cycles(d);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0] == std::vector<int>{0, 1, 2});
}

namespace {

// Oriented triangle 0 -> 1 -> 2 -> 0 where the arrow 0 -> 1 is replaced by a
// block: paths 0 -> 3 -> 1 and 0 -> 4 -> 1 plus the backward arrow 1 -> 0.
AnnotatedQuiver blocked_triangle() {
  Quiver q = Quiver::from_arrows(5, {{0, 3, 1},
                                     {3, 1, 1},
                                     {0, 4, 1},
                                     {4, 1, 1},
                                     {1, 0, 1},
                                     {1, 2, 1},
                                     {2, 0, 1}});
  BlockAnnotation b;
  b.kind = BlockKind::IV;
  b.from = 0;
  b.to = 1;
  b.extra = {3, 4};
  return AnnotatedQuiver{q, {b}};
}

}  // namespace

TEST_CASE("block validation accepts the backward block and rejects damage") {
  AnnotatedQuiver good = blocked_triangle();
  CHECK_NOTHROW(validate(good));

  AnnotatedQuiver no_return = good;
  Quiver q = no_return.quiver();
  q.set_arrow(1, 0, 0);
  no_return.graph = q;
  CHECK_THROWS_AS(validate(no_return), InvalidInput);

  AnnotatedQuiver leaky = good;
  q = leaky.quiver();
  q.set_arrow(3, 2, 1);  // middle vertex touching the outside
  leaky.graph = q;
  CHECK_THROWS_AS(validate(leaky), InvalidInput);

  AnnotatedQuiver joined_extras = good;
  q = joined_extras.quiver();
  q.set_arrow(3, 4, 1);
  joined_extras.graph = q;
  CHECK_THROWS_AS(validate(joined_extras), InvalidInput);
}

TEST_CASE("contracted cycles report the block on the right edge") {
  auto cycles = contracted_cycles(blocked_triangle());
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].vertices == std::vector<int>{0, 1, 2});
  CHECK(cycles[0].incoming_block == std::vector<int>{-1, 0, -1});
}

TEST_CASE("contracted cycles need a block edge") {
  AnnotatedQuiver plain{cycle3(), {}};
  CHECK(contracted_cycles(plain).empty());
}
