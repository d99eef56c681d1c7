#pragma once

#include <vector>

namespace qcox {

// A word in involutive generators, letters are 0-based generator indices.
// Every generator is its own inverse, so there is no sign to carry around.
using Word = std::vector<int>;

// Cancel adjacent equal letters until none remain.
Word free_reduce(Word w);

// Free reduction, then cyclic reduction (first letter == last letter cancels),
// then rotate to the lexicographically least cyclic shift.  Two relators that
// differ by free/cyclic reduction and rotation normalize to the same word.
Word normalize_relator(Word w);

// Images of each generator under a substitution t_i -> word in s_j.
struct Substitution {
  std::vector<Word> image;  // image[i] = word replacing generator i
};

// Replace every letter by its image and freely reduce the result.
Word apply_substitution(const Word& w, const Substitution& sub);

}  // namespace qcox
