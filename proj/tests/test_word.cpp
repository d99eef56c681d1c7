#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qcox/word.hpp"

using namespace qcox;

TEST_CASE("free reduction cancels adjacent repeats") {
  CHECK(free_reduce({0, 0}) == Word{});
  CHECK(free_reduce({0, 1, 1, 0}) == Word{});
  CHECK(free_reduce({0, 1, 2, 2, 1, 3}) == Word{0, 3});
  CHECK(free_reduce({2, 1, 1, 1, 2}) == Word{2, 1, 2});
  CHECK(free_reduce({}) == Word{});
}

TEST_CASE("relator normalization is cyclic and rotation-minimal") {
  CHECK(normalize_relator({1, 0, 1, 0}) == Word{0, 1, 0, 1});
  // conjugation by the shared first/last letter is stripped
  CHECK(normalize_relator({2, 0, 1, 2}) == Word{0, 1});
  CHECK(normalize_relator({0, 1, 2, 1, 0}) == Word{2});
  CHECK(normalize_relator({}) == Word{});
}

TEST_CASE("substitution maps letters to words and reduces") {
  Substitution sub;
  sub.image = {Word{1, 0, 1}, Word{1}};
  CHECK(apply_substitution({0}, sub) == Word{1, 0, 1});
  CHECK(apply_substitution({0, 1}, sub) == Word{1, 0});
  CHECK(apply_substitution({1, 0, 1}, sub) == Word{0});
}
