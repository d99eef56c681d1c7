#pragma once

#include <string>
#include <vector>

#include "qcox/quiver.hpp"
#include "qcox/word.hpp"

namespace qcox {

// Symmetric matrix of Coxeter exponents m_ij in {1, 2, 3, 4}, m_ii = 1.
struct CoxeterMatrix {
  int n = 0;
  std::vector<int> m;

  explicit CoxeterMatrix(int size = 0) : n(size), m(static_cast<size_t>(size) * size, 2) {
    for (int i = 0; i < size; ++i) set(i, i, 1);
  }
  int at(int i, int j) const { return m[static_cast<size_t>(i) * n + j]; }
  void set(int i, int j, int v) {
    m[static_cast<size_t>(i) * n + j] = v;
    m[static_cast<size_t>(j) * n + i] = v;
  }
  bool operator==(const CoxeterMatrix&) const = default;
};

// m_ij = 2 / 3 / 4 for not joined / simple arrow / weight-2 arrow.
// The quiver overload throws DoubleArrowError on arrows of multiplicity >= 2.
CoxeterMatrix coxeter_matrix(const Quiver& q);
CoxeterMatrix coxeter_matrix(const Diagram& d);

enum class RelatorKind {
  CoxeterPair,     // (s_i s_j)^{m_ij}
  ChordlessCycle,  // squared zigzag word along a chordless oriented cycle
  BlockCycle,      // same, with block vertices conjugating their cycle letter
};

struct Relator {
  Word word;  // freely and cyclically reduced, least cyclic rotation
  RelatorKind kind = RelatorKind::CoxeterPair;
  std::string note;  // human-readable source, e.g. "cycle 0>1>2"
};

// Group presentation on involutive generators.  The involution relations
// s_i^2 are implicit and never listed.  feature_count / warning are filled
// by callers that know the underlying surface (invariance of the group needs
// at least 4 punctures-plus-boundary-components).
struct Presentation {
  int ngens = 0;
  std::vector<Relator> relators;
  int feature_count = -1;  // -1 = unknown
  std::string warning;
};

// Relations read off the (annotated) quiver or diagram: Coxeter pair
// relations for every pair, one cycle relation per chordless oriented cycle,
// and one block-cycle relation per marked contracted cycle.
Presentation presentation_of(const AnnotatedQuiver& aq);
Presentation presentation_of(const Quiver& q);
Presentation presentation_of(const Diagram& d);

// Generator images induced by mutation at k: t_i -> s_k s_i s_k whenever
// there is an arrow i -> k, t_i -> s_i otherwise, and t_k -> s_k.  With
// outgoing = true the conjugated set is the arrows k -> i instead; the two
// versions differ by an overall conjugation by s_k.
Substitution mutation_substitution(const Quiver& q, int k, bool outgoing = false);

// Text form: "gens <n>" then "rel <i1> <i2> ..." per relator, 1-based.
std::string to_text(const Presentation& p);
Presentation presentation_from_text(const std::string& text);

}  // namespace qcox
