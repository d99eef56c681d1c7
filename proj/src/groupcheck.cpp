#include "qcox/groupcheck.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <random>

namespace qcox {

std::vector<ExactMatrix> tits_matrices(const CoxeterMatrix& m) {
  const int n = m.n;
  std::vector<ExactMatrix> gens;
  gens.reserve(n);
  for (int i = 0; i < n; ++i) {
    ExactMatrix s = ExactMatrix::identity(n);
    for (int j = 0; j < n; ++j) {
      if (j == i) {
        s.at(i, i) = zr2_int(-1);
        continue;
      }
      switch (m.at(i, j)) {
        case 2: break;  // c = 0
        case 3: s.at(i, j) = zr2_int(1); break;
        case 4: s.at(i, j) = zr2_sqrt2(); break;
        default:
          throw InvalidInput("tits_matrices: exponent m=" + std::to_string(m.at(i, j)) +
                             " not supported (need 2, 3 or 4)");
      }
    }
    gens.push_back(std::move(s));
  }
  return gens;
}

ExactMatrix evaluate_word(const std::vector<ExactMatrix>& gens, const Word& w) {
  if (gens.empty()) throw InvalidInput("evaluate_word: no generators");
  ExactMatrix out = ExactMatrix::identity(gens[0].size());
  for (int x : w) {
    if (x < 0 || x >= static_cast<int>(gens.size()))
      throw InvalidInput("evaluate_word: letter out of range");
    out = out * gens[static_cast<size_t>(x)];
  }
  return out;
}

HomomorphismReport check_homomorphism(const Presentation& p, const std::vector<Word>& images,
                                      const std::vector<ExactMatrix>& gens) {
  if (static_cast<int>(images.size()) != p.ngens)
    throw InvalidInput("check_homomorphism: need one image per generator");
  HomomorphismReport rep;
  std::vector<ExactMatrix> img;
  img.reserve(images.size());
  for (int i = 0; i < p.ngens; ++i) {
    ExactMatrix m = evaluate_word(gens, images[static_cast<size_t>(i)]);
    if (!(m * m).is_identity()) {
      rep.ok = false;
      rep.bad_generators.push_back(i);
    }
    img.push_back(std::move(m));
  }
  for (size_t r = 0; r < p.relators.size(); ++r) {
    ExactMatrix m = ExactMatrix::identity(gens[0].size());
    for (int x : p.relators[r].word) m = m * img[static_cast<size_t>(x)];
    if (!m.is_identity()) {
      rep.ok = false;
      rep.bad_relators.push_back(static_cast<int>(r));
    }
  }
  return rep;
}

int CosetTable::act(int c, const Word& w) const {
  for (int x : w) {
    if (c < 0) return -1;
    if (x < 0 || x >= static_cast<int>(table.empty() ? 0 : table[0].size())) return -1;
    c = table[static_cast<size_t>(c)][static_cast<size_t>(x)];
  }
  return c;
}

namespace {

// HLT coset enumeration over involutive generators.  The table stores, per
// coset and generator, the neighbouring coset; since every generator is an
// involution the table doubles as its own inverse table.  Coincidences are
// handled with a union-find whose class minimum survives; stale entries are
// chased through find() on read.
class Enumerator {
 public:
  Enumerator(int ngens, std::vector<Word> relators, size_t max_cosets)
      : ngens_(ngens), relators_(std::move(relators)), max_cosets_(max_cosets) {
    alloc();  // coset 0
  }

  bool run(const std::vector<Word>& subgroup) {
    for (const Word& w : subgroup)
      if (!scan_and_fill(0, w)) return false;
    for (int c = 0; c < static_cast<int>(tab_.size()); ++c) {
      if (find(c) != c) continue;
      for (const Word& r : relators_) {
        if (!scan_and_fill(c, r)) return false;
        if (find(c) != c) break;  // c was merged away mid-scan
      }
      if (find(c) != c) continue;
      for (int g = 0; g < ngens_; ++g) {
        if (get(c, g) == -1) {
          if (!define(c, g)) return false;
        }
      }
    }
    return true;
  }

  CosetTable harvest(bool complete, const std::vector<Word>& subgroup) {
    CosetTable out;
    out.status = complete ? CosetTable::Status::Complete : CosetTable::Status::Exhausted;
    std::vector<int> newid(tab_.size(), -1);
    int next = 0;
    for (size_t c = 0; c < tab_.size(); ++c)
      if (find(static_cast<int>(c)) == static_cast<int>(c)) newid[c] = next++;
    out.coset_count = static_cast<size_t>(next);
    out.table.assign(static_cast<size_t>(next), std::vector<int>(static_cast<size_t>(ngens_), -1));
    for (size_t c = 0; c < tab_.size(); ++c) {
      if (newid[c] < 0) continue;
      for (int g = 0; g < ngens_; ++g) {
        int t = get(static_cast<int>(c), g);
        out.table[static_cast<size_t>(newid[c])][static_cast<size_t>(g)] =
            t < 0 ? -1 : newid[static_cast<size_t>(t)];
      }
    }
    if (complete) verify(out, subgroup);
    return out;
  }

 private:
  int ngens_;
  std::vector<Word> relators_;
  size_t max_cosets_;
  std::vector<std::vector<int>> tab_;
  std::vector<int> parent_;

  bool alloc() {
    if (tab_.size() >= max_cosets_) return false;
    tab_.emplace_back(static_cast<size_t>(ngens_), -1);
    parent_.push_back(static_cast<int>(parent_.size()));
    return true;
  }

  int find(int c) {
    while (parent_[static_cast<size_t>(c)] != c) {
      parent_[static_cast<size_t>(c)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(c)])];
      c = parent_[static_cast<size_t>(c)];
    }
    return c;
  }

  int get(int c, int g) {
    int t = tab_[static_cast<size_t>(c)][static_cast<size_t>(g)];
    if (t < 0) return -1;
    t = find(t);
    tab_[static_cast<size_t>(c)][static_cast<size_t>(g)] = t;
    return t;
  }

  bool define(int c, int g) {
    if (!alloc()) return false;
    int m = static_cast<int>(tab_.size()) - 1;
    tab_[static_cast<size_t>(c)][static_cast<size_t>(g)] = m;
    tab_[static_cast<size_t>(m)][static_cast<size_t>(g)] = c;
    return true;
  }

  void set_edge(int a, int g, int b) {
    int ta = get(a, g);
    if (ta == -1) {
      int tb = get(b, g);
      tab_[static_cast<size_t>(a)][static_cast<size_t>(g)] = b;
      if (tb == -1)
        tab_[static_cast<size_t>(b)][static_cast<size_t>(g)] = a;
      else if (tb != a)
        coincide(tb, a);
    } else if (ta != b) {
      coincide(ta, b);
    }
  }

  void coincide(int a, int b) {
    std::vector<std::pair<int, int>> stack{{a, b}};
    while (!stack.empty()) {
      auto [p0, q0] = stack.back();
      stack.pop_back();
      int x = find(p0), y = find(q0);
      if (x == y) continue;
      if (x > y) std::swap(x, y);
      parent_[static_cast<size_t>(y)] = x;
      for (int g = 0; g < ngens_; ++g) {
        int d = tab_[static_cast<size_t>(y)][static_cast<size_t>(g)];
        if (d == -1) continue;
        tab_[static_cast<size_t>(y)][static_cast<size_t>(g)] = -1;
        if (tab_[static_cast<size_t>(d)][static_cast<size_t>(g)] == y)
          tab_[static_cast<size_t>(d)][static_cast<size_t>(g)] = -1;
        int dr = find(d);
        int& slot_x = tab_[static_cast<size_t>(x)][static_cast<size_t>(g)];
        if (slot_x == -1) {
          slot_x = dr;
          int& slot_d = tab_[static_cast<size_t>(dr)][static_cast<size_t>(g)];
          if (slot_d == -1)
            slot_d = x;
          else if (find(slot_d) != x)
            stack.push_back({slot_d, x});
        } else if (find(slot_x) != dr) {
          stack.push_back({slot_x, dr});
        }
      }
    }
  }

  // Forward/backward relator scan from c, defining cosets to fill gaps.
  bool scan_and_fill(int c, const Word& w) {
    if (w.empty()) return true;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    int f = c, b = c;
    while (true) {
      while (i <= j) {
        int t = get(f, w[static_cast<size_t>(i)]);
        if (t < 0) break;
        f = t;
        ++i;
      }
      if (i > j) {
        if (f != b) coincide(f, b);
        return true;
      }
      while (j >= i) {
        int t = get(b, w[static_cast<size_t>(j)]);
        if (t < 0) break;
        b = t;
        --j;
      }
      if (j < i) {
        if (f != b) coincide(f, b);
        return true;
      }
      if (i == j) {
        set_edge(f, w[static_cast<size_t>(i)], b);
        return true;
      }
      if (!define(f, w[static_cast<size_t>(i)])) return false;
    }
  }

  void verify(const CosetTable& out, const std::vector<Word>& subgroup) const {
    for (size_t c = 0; c < out.table.size(); ++c) {
      for (int g = 0; g < ngens_; ++g) {
        int t = out.table[c][static_cast<size_t>(g)];
        if (t < 0 || out.table[static_cast<size_t>(t)][static_cast<size_t>(g)] != static_cast<int>(c))
          throw Error("todd_coxeter: completed table is not involutive");
      }
      for (const Word& r : relators_)
        if (out.act(static_cast<int>(c), r) != static_cast<int>(c))
          throw Error("todd_coxeter: completed table violates a relator");
    }
    for (const Word& w : subgroup)
      if (out.act(0, w) != 0) throw Error("todd_coxeter: subgroup generator does not fix coset 0");
  }
};

}  // namespace

CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup,
                        size_t max_cosets) {
  if (max_cosets < 1) throw InvalidInput("todd_coxeter: max_cosets must be >= 1");
  if (p.ngens < 1) throw InvalidInput("todd_coxeter: need at least one generator");
  auto check_word = [&](const Word& w) {
    for (int x : w)
      if (x < 0 || x >= p.ngens) throw InvalidInput("todd_coxeter: letter out of range");
  };
  std::vector<Word> rels;
  rels.reserve(p.relators.size());
  for (const Relator& r : p.relators) {
    check_word(r.word);
    rels.push_back(r.word);
  }
  for (const Word& w : subgroup) check_word(w);

  Enumerator e(p.ngens, std::move(rels), max_cosets);
  bool complete = e.run(subgroup);
  return e.harvest(complete, subgroup);
}

void FiniteGroupTarget::validate() {
  if (order < 1) throw InvalidInput("group target: order must be >= 1");
  if (static_cast<int>(mul.size()) != order) throw InvalidInput("group target: bad table height");
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != order) throw InvalidInput("group target: bad table width");
    for (int v : row)
      if (v < 0 || v >= order) throw InvalidInput("group target: entry out of range");
  }
  identity = -1;
  for (int e = 0; e < order; ++e) {
    bool ok = true;
    for (int x = 0; x < order && ok; ++x) ok = mul[e][x] == x && mul[x][e] == x;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) throw InvalidInput("group target: no identity element");
  for (int x = 0; x < order; ++x) {
    bool has_inverse = false;
    for (int y = 0; y < order && !has_inverse; ++y) has_inverse = mul[x][y] == identity;
    if (!has_inverse) throw InvalidInput("group target: element without inverse");
  }
  if (order <= 64) {
    for (int x = 0; x < order; ++x)
      for (int y = 0; y < order; ++y)
        for (int z = 0; z < order; ++z)
          if (mul[mul[x][y]][z] != mul[x][mul[y][z]])
            throw InvalidInput("group target: not associative");
  } else {
    std::mt19937 rng(0xc0c0);
    std::uniform_int_distribution<int> pick(0, order - 1);
    for (int t = 0; t < 20000; ++t) {
      int x = pick(rng), y = pick(rng), z = pick(rng);
      if (mul[mul[x][y]][z] != mul[x][mul[y][z]])
        throw InvalidInput("group target: not associative");
    }
  }
}

std::vector<int> FiniteGroupTarget::involutions_and_identity() const {
  std::vector<int> out{identity};
  for (int x = 0; x < order; ++x)
    if (x != identity && mul[x][x] == identity) out.push_back(x);
  return out;
}

namespace {

long long count_homs_fixed(const Presentation& p, const FiniteGroupTarget& tgt,
                           const std::vector<int>& candidates,
                           const std::vector<std::vector<int>>& relators_by_maxgen,
                           std::vector<int>& img, int depth) {
  if (depth == p.ngens) return 1;
  long long total = 0;
  for (int cand : candidates) {
    img[static_cast<size_t>(depth)] = cand;
    bool ok = true;
    for (int ri : relators_by_maxgen[static_cast<size_t>(depth)]) {
      int acc = tgt.identity;
      for (int x : p.relators[static_cast<size_t>(ri)].word)
        acc = tgt.mul[static_cast<size_t>(acc)][static_cast<size_t>(img[static_cast<size_t>(x)])];
      if (acc != tgt.identity) {
        ok = false;
        break;
      }
    }
    if (ok) total += count_homs_fixed(p, tgt, candidates, relators_by_maxgen, img, depth + 1);
  }
  return total;
}

}  // namespace

long long count_homomorphisms(const Presentation& p, const FiniteGroupTarget& target) {
  FiniteGroupTarget tgt = target;
  if (tgt.identity < 0) tgt.validate();
  if (p.ngens == 0) return 1;
  std::vector<int> candidates = tgt.involutions_and_identity();
  // Bucket relators by their largest letter so each is checked as soon as its
  // support is fully assigned.
  std::vector<std::vector<int>> by_maxgen(static_cast<size_t>(p.ngens));
  for (size_t r = 0; r < p.relators.size(); ++r) {
    const Word& w = p.relators[r].word;
    if (w.empty()) continue;
    int mx = *std::max_element(w.begin(), w.end());
    if (mx < 0 || mx >= p.ngens) throw InvalidInput("count_homomorphisms: letter out of range");
    by_maxgen[static_cast<size_t>(mx)].push_back(static_cast<int>(r));
  }
  // Split on the image of generator 0.
  std::vector<std::future<long long>> parts;
  for (int cand : candidates) {
    parts.push_back(std::async(std::launch::async, [&, cand]() -> long long {
      std::vector<int> img(static_cast<size_t>(p.ngens), tgt.identity);
      img[0] = cand;
      for (int ri : by_maxgen[0]) {
        int acc = tgt.identity;
        for (int x : p.relators[static_cast<size_t>(ri)].word)
          acc = tgt.mul[static_cast<size_t>(acc)][static_cast<size_t>(img[static_cast<size_t>(x)])];
        if (acc != tgt.identity) return 0;
      }
      return count_homs_fixed(p, tgt, candidates, by_maxgen, img, 1);
    }));
  }
  long long total = 0;
  for (auto& f : parts) total += f.get();
  return total;
}

int abelianization_f2(const Presentation& p) {
  if (p.ngens > 64) throw InvalidInput("abelianization_f2: more than 64 generators");
  std::vector<uint64_t> rows;
  for (const Relator& r : p.relators) {
    uint64_t v = 0;
    for (int x : r.word) v ^= uint64_t{1} << x;
    if (v) rows.push_back(v);
  }
  int rank = 0;
  for (int bit = 0; bit < p.ngens; ++bit) {
    uint64_t mask = uint64_t{1} << bit;
    size_t pivot = SIZE_MAX;
    for (size_t i = static_cast<size_t>(rank); i < rows.size(); ++i) {
      if (rows[i] & mask) {
        pivot = i;
        break;
      }
    }
    if (pivot == SIZE_MAX) continue;
    std::swap(rows[static_cast<size_t>(rank)], rows[pivot]);
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != static_cast<size_t>(rank) && (rows[i] & mask)) rows[i] ^= rows[static_cast<size_t>(rank)];
    ++rank;
  }
  return p.ngens - rank;
}

InvariantReport invariant_report(const Presentation& p,
                                 const std::vector<FiniteGroupTarget>& targets,
                                 size_t coset_budget) {
  InvariantReport rep;
  rep.f2_rank = abelianization_f2(p);
  for (const FiniteGroupTarget& t : targets)
    rep.hom_counts.emplace_back(t.name, count_homomorphisms(p, t));
  if (coset_budget > 0) {
    CosetTable ct = todd_coxeter(p, {}, coset_budget);
    if (ct.status == CosetTable::Status::Complete) rep.order = ct.coset_count;
  }
  return rep;
}

}  // namespace qcox
