#include "qcox/word.hpp"

#include <algorithm>

namespace qcox {

Word free_reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    if (!out.empty() && out.back() == x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

namespace {

Word least_rotation(const Word& w) {
  if (w.size() < 2) return w;
  Word best = w;
  Word cur = w;
  for (size_t r = 1; r < w.size(); ++r) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

}  // namespace

Word normalize_relator(Word w) {
  w = free_reduce(std::move(w));
  while (w.size() >= 2 && w.front() == w.back()) {
    // Conjugate by the first letter: x u x  ->  u.
    w.erase(w.begin());
    w.pop_back();
    w = free_reduce(std::move(w));
  }
  return least_rotation(w);
}

Word apply_substitution(const Word& w, const Substitution& sub) {
  Word out;
  for (int x : w) {
    const Word& img = sub.image.at(static_cast<size_t>(x));
    out.insert(out.end(), img.begin(), img.end());
  }
  return free_reduce(std::move(out));
}

}  // namespace qcox
