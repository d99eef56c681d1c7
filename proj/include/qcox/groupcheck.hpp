#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcox/exact.hpp"
#include "qcox/presentation.hpp"
#include "qcox/word.hpp"

namespace qcox {

// Geometric (Tits) representation: generator i maps to the reflection
// sigma_i(e_j) = e_j + c_ij e_i with c_ij = 2 cos(pi / m_ij), i.e. c = 0, 1,
// sqrt(2) for m = 2, 3, 4.  Exact over Z[sqrt(2)]; faithful for the Coxeter
// group, so word problems against the pair relations can be decided here.
std::vector<ExactMatrix> tits_matrices(const CoxeterMatrix& m);

// Left-to-right product of the generator matrices named by the word.
ExactMatrix evaluate_word(const std::vector<ExactMatrix>& gens, const Word& w);

struct HomomorphismReport {
  bool ok = true;
  // Generators whose image fails to square to the identity.
  std::vector<int> bad_generators;
  // Relators (indices into Presentation::relators) whose image is not the
  // identity.
  std::vector<int> bad_relators;
};

// Checks that mapping generator i of `p` to the word images[i] over `gens`
// defines a homomorphism: every image squares to the identity and every
// relator evaluates to the identity.
HomomorphismReport check_homomorphism(const Presentation& p, const std::vector<Word>& images,
                                      const std::vector<ExactMatrix>& gens);

// Coset enumeration result.  Rows are live cosets renumbered 0..count-1 in
// order of first definition; entries are -1 where the (exhausted) run never
// filled the slot.  Generators are involutions, so the table is its own
// inverse table.
struct CosetTable {
  enum class Status { Complete, Exhausted };
  Status status = Status::Exhausted;
  size_t coset_count = 0;
  std::vector<std::vector<int>> table;  // table[c][g]

  // Trace a word from coset c; -1 if the trace leaves the table.
  int act(int c, const Word& w) const;
};

// HLT-style coset enumeration of the subgroup generated by `subgroup` (words
// over the generators) inside the group presented by `p`.  Involution
// relations are baked into the table and never scanned.  Deterministic:
// cosets are defined in scan order, relators scanned smallest coset first.
// max_cosets bounds the number of cosets ever defined; hitting it yields
// Status::Exhausted with the partial table.
CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup,
                        size_t max_cosets);

// Finite group given by its multiplication table.  Element 0 need not be the
// identity; the identity is located on validation.
struct FiniteGroupTarget {
  std::string name;
  int order = 0;
  std::vector<std::vector<int>> mul;
  int identity = -1;  // filled by validate()

  void validate();  // throws InvalidInput; checks closure, identity,
                    // inverses, and associativity on all triples up to
                    // order 64 (random sample beyond)
  std::vector<int> involutions_and_identity() const;
};

// Number of homomorphisms from the group presented by p to the target.
// Generator images range over involutions and the identity (forced by the
// implicit s_i^2 relations).  Backtracking with relator-prefix pruning,
// parallelized over the image of generator 0.
long long count_homomorphisms(const Presentation& p, const FiniteGroupTarget& target);

// Dimension of the abelianization tensored with F_2, i.e. ngens minus the
// F_2-rank of the relator exponent-parity matrix.
int abelianization_f2(const Presentation& p);

// Invariants used to tell presentations apart cheaply.
struct InvariantReport {
  int f2_rank = 0;
  std::vector<std::pair<std::string, long long>> hom_counts;
  std::optional<size_t> order;  // group order if enumeration completed
};

InvariantReport invariant_report(const Presentation& p,
                                 const std::vector<FiniteGroupTarget>& targets,
                                 size_t coset_budget);

}  // namespace qcox
