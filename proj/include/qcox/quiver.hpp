#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qcox/errors.hpp"

namespace qcox {

// Quiver without loops or oriented 2-cycles, stored as the skew-symmetric
// exchange matrix b: b[i][j] > 0 means b[i][j] arrows from i to j.
class Quiver {
 public:
  Quiver() = default;
  explicit Quiver(int n) : n_(n), b_(static_cast<size_t>(n) * n, 0) {}

  // arrows: triples (i, j, mult) with mult >= 1, at most one triple per pair.
  static Quiver from_arrows(int n, const std::vector<std::array<int, 3>>& arrows);

  int size() const { return n_; }
  int entry(int i, int j) const { return b_[idx(i, j)]; }
  void set_arrow(int i, int j, int mult);  // b[i][j] = mult, b[j][i] = -mult

  bool joined(int i, int j) const { return entry(i, j) != 0; }
  bool has_arrow(int i, int j) const { return entry(i, j) > 0; }
  int max_multiplicity() const;

  // All arrows as (from, to, mult), mult >= 1, ordered by (from, to).
  std::vector<std::array<int, 3>> arrows() const;

  bool operator==(const Quiver&) const = default;

 private:
  size_t idx(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }
  int n_ = 0;
  std::vector<int> b_;
};

// Mutation at vertex k.  An involution; preserves skew-symmetry.
Quiver mutate(const Quiver& q, int k);

// Permutation p with b_to[p[i]][p[j]] == b_from[i][j], if any.
std::optional<std::vector<int>> find_isomorphism(const Quiver& from, const Quiver& to);
bool is_isomorphic(const Quiver& a, const Quiver& b);

// Canonical byte string: the lexicographically least serialization of the
// permuted matrix over all vertex relabelings.  Entries are laid out in
// "border" order (at step d, column then row of index d, diagonal skipped)
// and encoded as sign-biased big-endian 32-bit values so that byte order
// matches numeric order.  Equal strings iff isomorphic quivers.
std::string canonical_form(const Quiver& q);

struct MutationClass {
  std::vector<Quiver> reps;         // one representative per class member
  std::vector<std::string> forms;   // canonical_form of each rep, same order
  bool exhausted = false;           // stopped at max_classes, reps is partial
};

// Breadth-first closure of q under mutation at every vertex, collapsing
// isomorphic quivers via canonical_form.  Stops once max_classes distinct
// forms are found and marks the result exhausted.
MutationClass mutation_class(const Quiver& q, size_t max_classes);

// Weighted oriented graph (edge weights 1 or 2, at most one edge per pair).
// Stored like the quiver matrix: w[i][j] = +weight for an arrow i -> j.
class Diagram {
 public:
  Diagram() = default;
  explicit Diagram(int n) : n_(n), w_(static_cast<size_t>(n) * n, 0) {}

  static Diagram from_arrows(int n, const std::vector<std::array<int, 3>>& arrows);

  int size() const { return n_; }
  int entry(int i, int j) const { return w_[idx(i, j)]; }
  void set_arrow(int i, int j, int weight);

  bool joined(int i, int j) const { return entry(i, j) != 0; }
  bool has_arrow(int i, int j) const { return entry(i, j) > 0; }

  std::vector<std::array<int, 3>> arrows() const;

  bool operator==(const Diagram&) const = default;

 private:
  size_t idx(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }
  int n_ = 0;
  std::vector<int> w_;
};

// Oriented chordless cycles: vertex lists (v0, v1, ..., v_{m-1}) with an arrow
// v_t -> v_{t+1} (indices mod m) and no other pair of cycle vertices joined.
// v0 is the least vertex of the cycle; cycles are ordered lexicographically.
std::vector<std::vector<int>> chordless_oriented_cycles(const Quiver& q);
std::vector<std::vector<int>> chordless_oriented_cycles(const Diagram& d);

enum class BlockKind {
  IV,   // two parallel length-2 paths p -> e -> i plus a return arrow i -> p
  IV2,  // one weight-2 path p -> e -> i plus a weight-1 return arrow i -> p
};

// Marks a subgraph standing in for an arc between two punctures.  "from"/"to"
// is the base pair (p, i): the contracted graph replaces the whole block by a
// single arrow p -> i.  extra holds the middle vertices (one for IV2).
struct BlockAnnotation {
  BlockKind kind = BlockKind::IV;
  int from = -1;
  int to = -1;
  std::array<int, 2> extra{-1, -1};
};

// Quiver or diagram plus block annotations.
struct AnnotatedQuiver {
  std::variant<Quiver, Diagram> graph;
  std::vector<BlockAnnotation> blocks;

  bool weighted() const { return std::holds_alternative<Diagram>(graph); }
  const Quiver& quiver() const { return std::get<Quiver>(graph); }
  const Diagram& diagram() const { return std::get<Diagram>(graph); }

  int size() const;
  bool joined(int i, int j) const;
  bool has_arrow(int i, int j) const;
  int arrow_weight(int i, int j) const;  // multiplicity resp. weight of i -> j, 0 if none
};

// Checks block shape: distinct in-range vertices, extras pairwise disjoint
// across blocks and not adjacent to anything outside their block, the induced
// subgraph on {from, extra, to} exactly the block pattern, and a return arrow
// to -> from.  Throws InvalidInput on violation.
void validate(const AnnotatedQuiver& aq);

// Chordless oriented cycle in the contracted graph, with at least one block
// edge.  incoming_block[t] is the index (into AnnotatedQuiver::blocks) of the
// block on the edge v_{t-1} -> v_t, or -1 for a plain arrow.
struct MarkedCycle {
  std::vector<int> vertices;
  std::vector<int> incoming_block;
};

std::vector<MarkedCycle> contracted_cycles(const AnnotatedQuiver& aq);

}  // namespace qcox
