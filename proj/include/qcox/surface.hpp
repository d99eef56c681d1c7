#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcox/errors.hpp"
#include "qcox/quiver.hpp"

namespace qcox {

struct SurfaceSignature {
  int genus = 0;
  int punctures = 0;             // marked points off the boundary
  int boundary_components = 0;
  int boundary_marks = 0;        // marked points on the boundary, all components
  bool operator==(const SurfaceSignature&) const = default;
};

// Triangulated oriented surface, stored triangle-side wise.  Slot 3t+k is
// side k of triangle t; side k runs from corner k to corner k+1 (mod 3),
// corners counterclockwise.  glue is an involution on slots without fixed
// points; unglued slots (-1) lie on the boundary.  Every gluing identifies
// the tail of one side with the head of the other, so any involution yields
// an oriented surface.  The complex must be connected.
//
// Interior arcs are the glued slot pairs, indexed by their smaller slot in
// increasing order; boundary segments are the unglued slots in increasing
// order.  Quiver vertices, flips and digon bookkeeping all use arc indices.
class Triangulation {
 public:
  static Triangulation from_gluing(int triangles,
                                   const std::vector<std::pair<int, int>>& glued_pairs);
  static Triangulation from_table(std::vector<int> glue);

  int triangle_count() const { return static_cast<int>(glue_.size()) / 3; }
  int slot_count() const { return static_cast<int>(glue_.size()); }
  int partner(int slot) const { return glue_[static_cast<size_t>(slot)]; }
  const std::vector<int>& table() const { return glue_; }

  int arc_count() const { return static_cast<int>(arc_slot_.size()); }
  int boundary_segment_count() const { return static_cast<int>(bd_slot_.size()); }
  std::pair<int, int> arc_slots(int arc) const;
  int arc_of_slot(int slot) const { return arc_of_slot_[static_cast<size_t>(slot)]; }
  int boundary_slot(int segment) const { return bd_slot_[static_cast<size_t>(segment)]; }

  int vertex_count() const { return nvertices_; }
  int vertex_of_corner(int corner) const { return vertex_[static_cast<size_t>(corner)]; }
  bool vertex_on_boundary(int v) const { return on_boundary_[static_cast<size_t>(v)] != 0; }
  // (tail, head) vertices of the arc's smaller slot.
  std::pair<int, int> arc_endpoints(int arc) const;
  bool is_loop(int arc) const;

  bool is_self_folded(int t) const;
  std::vector<int> self_folded_triangles() const;

  // Boundary circles as cyclic lists of unglued slots.
  const std::vector<std::vector<int>>& boundary_circles() const { return circles_; }

  SurfaceSignature signature() const { return signature_; }

  bool operator==(const Triangulation& o) const { return glue_ == o.glue_; }

 private:
  explicit Triangulation(std::vector<int> glue);
  std::vector<int> glue_;
  std::vector<int> arc_slot_;      // arc -> smaller slot
  std::vector<int> bd_slot_;       // boundary segment -> slot
  std::vector<int> arc_of_slot_;   // slot -> arc index or -1
  std::vector<int> vertex_;        // corner -> vertex id
  int nvertices_ = 0;
  std::vector<char> on_boundary_;  // per vertex
  std::vector<std::vector<int>> circles_;
  SurfaceSignature signature_;
};

bool is_loop_free(const Triangulation& t);
std::vector<int> loop_arcs(const Triangulation& t);

// Flip of an interior arc: replaces the diagonal of the quadrilateral formed
// by the two adjacent triangles.  Throws TaggedFlipError when both sides of
// the arc lie in one triangle (inside of a self-folded triangle) and
// BoundaryArcError when the index refers to a boundary segment (indices
// arc_count()..arc_count()+boundary_segment_count()-1 are accepted as edge
// handles for this purpose).
Triangulation flip(const Triangulation& t, int arc);

struct FlipResult {
  Triangulation triangulation;
  std::vector<int> arc_map;  // arcs of the source -> arcs of the result
};
FlipResult flip_detailed(const Triangulation& t, int arc);

// Interior arcs whose flip is defined and keeps the triangulation loop-free.
std::vector<int> loop_free_flips(const Triangulation& t);

// Signed-adjacency quiver: vertices are interior arcs; every non-self-folded
// triangle contributes an arrow side -> next side (counterclockwise); the
// radius of a self-folded triangle inherits the connections of its loop and
// is never joined to it.  Each self-folded triangle yields a block
// annotation on the enclosing triangle.  Opposite contributions cancel,
// parallel ones sum (multiplicity two at most).
AnnotatedQuiver quiver_of(const Triangulation& t);

// Orientation reversal: relabels every triangle's sides 0<->2.
Triangulation mirror(const Triangulation& t);

// Canonical byte string, equal for two triangulations iff they are related
// by an orientation-preserving or -reversing combinatorial equivalence.
std::string canonical_key(const Triangulation& t);
// Same, orientation-preserving only.
std::string canonical_key_oriented(const Triangulation& t);

struct EquivalenceResult {
  std::optional<std::vector<int>> preserving;  // slot bijection T1 -> T2
  std::optional<std::vector<int>> reversing;
  bool equivalent() const { return preserving.has_value() || reversing.has_value(); }
};
EquivalenceResult is_equivalent(const Triangulation& a, const Triangulation& b);

// Fan triangulation of a once-marked (4g+2)-gon with opposite sides
// identified (giving genus g and 3 marked points), then p-3 extra punctures
// by repeated subdivision of triangle 0.  Requires p >= 3.
Triangulation standard_triangulation(int genus, int punctures);

// Subdivide triangle t into three around a fresh interior marked point.
Triangulation subdivide_triangle(const Triangulation& t, int triangle);

enum class DigonKind {
  Puncture,  // two triangles glued along two arcs, puncture inside
  Free,      // two parallel arcs enclosing a whole boundary component
  Rooted,    // two arcs from a boundary mark (root) enclosing part of its circle
};

struct Digon {
  DigonKind kind = DigonKind::Puncture;
  std::array<int, 2> triangles{-1, -1};    // Puncture kind: the glued pair
  std::array<int, 2> shared_arcs{-1, -1};  // Puncture kind: the two shared arcs
  std::array<int, 2> rim_slots{-1, -1};    // inside slots of the two bounding edges
  std::array<int, 2> poles{-1, -1};        // vertex ids
  int root = -1;                           // Rooted kind: the distinguished pole
  std::vector<int> interior;               // triangles deleted by removal, sorted
};

// All digons of t: the two-triangle puncture pattern everywhere, plus free
// and rooted patterns on bordered surfaces (classified by cutting along the
// candidate arc pair; the interior triangulation is ignored).
std::vector<Digon> find_digons(const Triangulation& t);

// Excise the digon and identify its two bounding edges into one.  Throws
// LastDigonError when nothing would remain.
Triangulation remove_digon(const Triangulation& t, const Digon& d);

struct DigonRemovalStep {
  Digon digon;               // in the coordinates of the triangulation it left
  std::vector<int> arc_map;  // arcs before -> arcs after (-1: gone to boundary)
};

struct AssociateRecord {
  std::vector<DigonRemovalStep> removals;
  std::vector<int> projection;  // arcs of the source -> arcs of the associate
  bool sentinel = false;        // stopped because only one digon remained
};

struct AssociateResult {
  Triangulation triangulation;
  AssociateRecord record;
};

// Fixed point of repeated puncture-digon and rooted-digon removal (free
// digons around boundary components are left in place).  Deterministic
// removal order; the projection composes the per-step arc maps.
AssociateResult associate_triangulation(const Triangulation& t);

// Side pairing of a (4g+2)-gon whose quotient is a closed genus-g surface
// with three marked points (fan center plus two rim vertex classes).
struct PolygonGluing {
  int genus = 0;
  std::vector<int> pairing;  // involution on 4g+2 sides, no fixed points

  int sides() const { return 4 * genus + 2; }
};

void validate_structure(const PolygonGluing& pg);  // involution shape only
// Valid = exactly two rim vertex classes and every side joins the two
// classes (so no rim arc of the quotient is a loop).
bool polygon_gluing_valid(const PolygonGluing& pg);
bool is_all_opposite(const PolygonGluing& pg);

// Fan of the polygon with the rim identified per the pairing.
Triangulation realize_polygon_gluing(const PolygonGluing& pg);

// All gluings reachable by one re-cut: cut the polygon along a diagonal with
// endpoints in distinct rim classes, reattach the two parts along a paired
// side couple straddling the cut; the cut copies become the new pair.
std::vector<PolygonGluing> admissible_regluings(const PolygonGluing& pg);

// Least displacement-sequence encoding over all rotations and reflections.
std::string polygon_canonical_key(const PolygonGluing& pg);

struct FlipGraph {
  struct Edge {
    int from = 0, to = 0, arc = 0;  // arc index within the source node
  };
  std::vector<Triangulation> nodes;  // class representatives, BFS order
  std::vector<std::string> keys;     // canonical_key of each node
  std::vector<Edge> edges;
  bool exhausted = false;
};

// BFS over loop-free triangulations under loop-free flips, collapsing nodes
// by canonical_key.  Stops (exhausted) when max_nodes classes are found.
FlipGraph loop_free_flip_graph(const Triangulation& start, size_t max_nodes);

}  // namespace qcox
