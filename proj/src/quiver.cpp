#include "qcox/quiver.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <set>

namespace qcox {

namespace {

void check_vertex(int v, int n, const char* what) {
  if (v < 0 || v >= n) throw InvalidInput(std::string(what) + ": vertex out of range");
}

}  // namespace

Quiver Quiver::from_arrows(int n, const std::vector<std::array<int, 3>>& arrows) {
  if (n < 0) throw InvalidInput("quiver size must be nonnegative");
  Quiver q(n);
  for (const auto& a : arrows) {
    check_vertex(a[0], n, "quiver arrow");
    check_vertex(a[1], n, "quiver arrow");
    if (a[0] == a[1]) throw InvalidInput("quiver arrow is a loop");
    if (a[2] < 1) throw InvalidInput("quiver arrow multiplicity must be >= 1");
    if (q.entry(a[0], a[1]) != 0) throw InvalidInput("duplicate quiver arrow");
    q.set_arrow(a[0], a[1], a[2]);
  }
  return q;
}

void Quiver::set_arrow(int i, int j, int mult) {
  check_vertex(i, n_, "set_arrow");
  check_vertex(j, n_, "set_arrow");
  if (i == j) throw InvalidInput("set_arrow: loop");
  b_[idx(i, j)] = mult;
  b_[idx(j, i)] = -mult;
}

int Quiver::max_multiplicity() const {
  int m = 0;
  for (int x : b_) m = std::max(m, std::abs(x));
  return m;
}

std::vector<std::array<int, 3>> Quiver::arrows() const {
  std::vector<std::array<int, 3>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (entry(i, j) > 0) out.push_back({i, j, entry(i, j)});
  return out;
}

Quiver mutate(const Quiver& q, int k) {
  const int n = q.size();
  check_vertex(k, n, "mutate");
  Quiver out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      long long bij = q.entry(i, j);
      long long v;
      if (i == k || j == k) {
        v = -bij;
      } else {
        long long bik = q.entry(i, k);
        long long bkj = q.entry(k, j);
        v = bij + (std::abs(bik) * bkj + bik * std::abs(bkj)) / 2;
      }
      if (v > INT32_MAX || v < INT32_MIN) throw Error("mutate: entry overflow");
      if (v > 0) out.set_arrow(i, j, static_cast<int>(v));
    }
  }
  return out;
}

namespace {

// Backtracking vertex placement; checks all entries against already-placed
// vertices, so a full placement is an isomorphism.
bool extend_iso(const Quiver& a, const Quiver& b, std::vector<int>& p,
                std::vector<char>& used, int depth) {
  const int n = a.size();
  if (depth == n) return true;
  for (int v = 0; v < n; ++v) {
    if (used[v]) continue;
    bool ok = true;
    for (int j = 0; j < depth; ++j) {
      if (b.entry(v, p[j]) != a.entry(depth, j) || b.entry(p[j], v) != a.entry(j, depth)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    p[depth] = v;
    used[v] = 1;
    if (extend_iso(a, b, p, used, depth + 1)) return true;
    used[v] = 0;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const Quiver& from, const Quiver& to) {
  if (from.size() != to.size()) return std::nullopt;
  std::vector<int> p(from.size(), -1);
  std::vector<char> used(from.size(), 0);
  if (extend_iso(from, to, p, used, 0)) return p;
  return std::nullopt;
}

bool is_isomorphic(const Quiver& a, const Quiver& b) {
  return find_isomorphism(a, b).has_value();
}

namespace {

void encode_entry(std::string& s, int v) {
  // Sign-biased big-endian: byte order equals numeric order.
  uint32_t u = static_cast<uint32_t>(v) + 0x80000000u;
  s.push_back(static_cast<char>((u >> 24) & 0xff));
  s.push_back(static_cast<char>((u >> 16) & 0xff));
  s.push_back(static_cast<char>((u >> 8) & 0xff));
  s.push_back(static_cast<char>(u & 0xff));
}

// Entries contributed when vertex number `d` is placed: column d above the
// diagonal, then row d left of the diagonal.
std::string border_segment(const Quiver& q, const std::vector<int>& perm, int d) {
  std::string s;
  s.reserve(static_cast<size_t>(8) * d);
  for (int i = 0; i < d; ++i) encode_entry(s, q.entry(perm[i], perm[d]));
  for (int j = 0; j < d; ++j) encode_entry(s, q.entry(perm[d], perm[j]));
  return s;
}

struct CanonSearch {
  const Quiver& q;
  int n;
  std::string best;  // always full length; 0xff padding acts as +infinity
  std::vector<int> perm;
  std::vector<char> used;
  size_t full_len;

  explicit CanonSearch(const Quiver& quiver)
      : q(quiver), n(quiver.size()), perm(quiver.size(), -1), used(quiver.size(), 0) {
    full_len = static_cast<size_t>(8) * (static_cast<size_t>(n) * (n - 1) / 2);
    best.assign(full_len, static_cast<char>(0xff));
  }

  void run(int depth, size_t pos) {
    if (depth == n) {
      return;  // best was updated on the way down
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      perm[depth] = v;
      std::string seg = border_segment(q, perm, depth);
      int cmp = std::char_traits<char>::compare(
          seg.data(), best.data() + pos,
          std::min(seg.size(), best.size() - pos));
      if (cmp > 0) continue;
      if (cmp < 0) {
        // Strictly better prefix: adopt it and pad the tail with +infinity.
        std::copy(seg.begin(), seg.end(), best.begin() + pos);
        std::fill(best.begin() + pos + seg.size(), best.end(), static_cast<char>(0xff));
      }
      used[v] = 1;
      run(depth + 1, pos + seg.size());
      used[v] = 0;
    }
  }
};

}  // namespace

std::string canonical_form(const Quiver& q) {
  std::string header;
  encode_entry(header, q.size());
  if (q.size() == 0) return header;
  CanonSearch s(q);
  s.run(0, 0);
  return header + s.best;
}

MutationClass mutation_class(const Quiver& q, size_t max_classes) {
  MutationClass result;
  if (max_classes == 0) {
    result.exhausted = true;
    return result;
  }
  std::set<std::string> seen;
  std::deque<Quiver> todo;
  auto add = [&](const Quiver& cand) -> bool {
    std::string form = canonical_form(cand);
    if (!seen.insert(form).second) return true;
    if (seen.size() > max_classes) {
      result.exhausted = true;
      return false;
    }
    result.reps.push_back(cand);
    result.forms.push_back(std::move(form));
    todo.push_back(cand);
    return true;
  };
  add(q);
  while (!todo.empty() && !result.exhausted) {
    Quiver cur = std::move(todo.front());
    todo.pop_front();
    for (int k = 0; k < cur.size() && !result.exhausted; ++k) add(mutate(cur, k));
  }
  return result;
}

Diagram Diagram::from_arrows(int n, const std::vector<std::array<int, 3>>& arrows) {
  if (n < 0) throw InvalidInput("diagram size must be nonnegative");
  Diagram d(n);
  for (const auto& a : arrows) {
    check_vertex(a[0], n, "diagram arrow");
    check_vertex(a[1], n, "diagram arrow");
    if (a[0] == a[1]) throw InvalidInput("diagram arrow is a loop");
    if (a[2] != 1 && a[2] != 2) throw InvalidInput("diagram weight must be 1 or 2");
    if (d.entry(a[0], a[1]) != 0) throw InvalidInput("duplicate diagram arrow");
    d.set_arrow(a[0], a[1], a[2]);
  }
  return d;
}

void Diagram::set_arrow(int i, int j, int weight) {
  check_vertex(i, n_, "set_arrow");
  check_vertex(j, n_, "set_arrow");
  if (i == j) throw InvalidInput("set_arrow: loop");
  if (weight != 1 && weight != 2) throw InvalidInput("diagram weight must be 1 or 2");
  w_[idx(i, j)] = weight;
  w_[idx(j, i)] = -weight;
}

std::vector<std::array<int, 3>> Diagram::arrows() const {
  std::vector<std::array<int, 3>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (entry(i, j) > 0) out.push_back({i, j, entry(i, j)});
  return out;
}

namespace {

// Generic chordless oriented cycle search over an adjacency view.  The start
// vertex is the cycle minimum; interior vertices may only be joined to their
// path neighbours, which makes every emitted cycle chordless by construction.
struct CycleSearch {
  int n;
  std::function<bool(int, int)> arrow;
  std::function<bool(int, int)> joined;
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  std::vector<char> on_path;

  void dfs(int s) {
    int u = path.back();
    for (int w = s + 1; w < n; ++w) {
      if (on_path[w] || !arrow(u, w)) continue;
      bool chord = false;
      for (size_t t = 1; t + 1 < path.size(); ++t) {
        if (joined(w, path[t])) {
          chord = true;
          break;
        }
      }
      if (chord) continue;
      if (path.size() >= 2 && joined(w, s)) {
        // w touches the start: the only chordless option is closing now.
        if (arrow(w, s)) {
          std::vector<int> cyc = path;
          cyc.push_back(w);
          out.push_back(std::move(cyc));
        }
        continue;
      }
      path.push_back(w);
      on_path[w] = 1;
      dfs(s);
      on_path[w] = 0;
      path.pop_back();
    }
  }

  std::vector<std::vector<int>> run() {
    on_path.assign(n, 0);
    for (int s = 0; s < n; ++s) {
      path = {s};
      on_path[s] = 1;
      dfs(s);
      on_path[s] = 0;
    }
    std::sort(out.begin(), out.end());
    return std::move(out);
  }
};

}  // namespace

std::vector<std::vector<int>> chordless_oriented_cycles(const Quiver& q) {
  CycleSearch cs;
  cs.n = q.size();
  cs.arrow = [&q](int i, int j) { return q.entry(i, j) > 0; };
  cs.joined = [&q](int i, int j) { return q.entry(i, j) != 0; };
  return cs.run();
}

std::vector<std::vector<int>> chordless_oriented_cycles(const Diagram& d) {
  CycleSearch cs;
  cs.n = d.size();
  cs.arrow = [&d](int i, int j) { return d.entry(i, j) > 0; };
  cs.joined = [&d](int i, int j) { return d.entry(i, j) != 0; };
  return cs.run();
}

int AnnotatedQuiver::size() const {
  return weighted() ? diagram().size() : quiver().size();
}

bool AnnotatedQuiver::joined(int i, int j) const {
  return weighted() ? diagram().joined(i, j) : quiver().joined(i, j);
}

bool AnnotatedQuiver::has_arrow(int i, int j) const {
  return weighted() ? diagram().has_arrow(i, j) : quiver().has_arrow(i, j);
}

int AnnotatedQuiver::arrow_weight(int i, int j) const {
  int e = weighted() ? diagram().entry(i, j) : quiver().entry(i, j);
  return e > 0 ? e : 0;
}

void validate(const AnnotatedQuiver& aq) {
  const int n = aq.size();
  std::vector<int> owner(n, -1);  // block index owning each extra vertex
  for (size_t b = 0; b < aq.blocks.size(); ++b) {
    const BlockAnnotation& blk = aq.blocks[b];
    std::vector<int> members{blk.from, blk.to, blk.extra[0]};
    if (blk.kind == BlockKind::IV) members.push_back(blk.extra[1]);
    for (int v : members) check_vertex(v, n, "block");
    std::set<int> uniq(members.begin(), members.end());
    if (uniq.size() != members.size()) throw InvalidInput("block vertices not distinct");
    int nextra = blk.kind == BlockKind::IV ? 2 : 1;
    for (int t = 0; t < nextra; ++t) {
      int e = blk.extra[t];
      if (owner[e] != -1) throw InvalidInput("block extra vertex shared between blocks");
      owner[e] = static_cast<int>(b);
    }
    if (blk.kind == BlockKind::IV2 && !aq.weighted())
      throw InvalidInput("weighted block on an unweighted quiver");
  }
  for (size_t b = 0; b < aq.blocks.size(); ++b) {
    const BlockAnnotation& blk = aq.blocks[b];
    int want = blk.kind == BlockKind::IV2 ? 2 : 1;
    int nextra = blk.kind == BlockKind::IV ? 2 : 1;
    for (int t = 0; t < nextra; ++t) {
      int e = blk.extra[t];
      if (aq.arrow_weight(blk.from, e) != want || aq.arrow_weight(e, blk.to) != want)
        throw InvalidInput("block middle vertex not wired as p -> e -> i");
      // Middle vertices of a block touch nothing outside it.
      for (int v = 0; v < n; ++v) {
        if (v == e || !aq.joined(e, v)) continue;
        bool inside = v == blk.from || v == blk.to ||
                      (blk.kind == BlockKind::IV && (v == blk.extra[0] || v == blk.extra[1]));
        if (!inside) throw InvalidInput("block middle vertex joined outside the block");
      }
    }
    if (blk.kind == BlockKind::IV && aq.joined(blk.extra[0], blk.extra[1]))
      throw InvalidInput("block middle vertices must not be joined");
    if (aq.arrow_weight(blk.to, blk.from) != 1)
      throw InvalidInput("block return arrow i -> p missing");
    if (aq.has_arrow(blk.from, blk.to))
      throw InvalidInput("block base pair also carries a direct forward arrow");
    for (int e : {blk.from, blk.to}) {
      if (owner[e] != -1) throw InvalidInput("block base vertex is another block's middle");
    }
  }
}

std::vector<MarkedCycle> contracted_cycles(const AnnotatedQuiver& aq) {
  validate(aq);
  const int n = aq.size();
  // block_edge[i*n+j] = block index if (i, j) is a contracted block edge.
  std::vector<int> block_edge(static_cast<size_t>(n) * n, -1);
  std::vector<char> dropped(static_cast<size_t>(n) * n, 0);  // return arrows
  std::vector<char> is_extra(n, 0);
  for (size_t b = 0; b < aq.blocks.size(); ++b) {
    const BlockAnnotation& blk = aq.blocks[b];
    block_edge[static_cast<size_t>(blk.from) * n + blk.to] = static_cast<int>(b);
    dropped[static_cast<size_t>(blk.to) * n + blk.from] = 1;
    is_extra[blk.extra[0]] = 1;
    if (blk.kind == BlockKind::IV) is_extra[blk.extra[1]] = 1;
  }
  auto carrow = [&](int i, int j) {
    if (is_extra[i] || is_extra[j]) return false;
    if (block_edge[static_cast<size_t>(i) * n + j] >= 0) return true;
    if (dropped[static_cast<size_t>(i) * n + j]) return false;
    return aq.arrow_weight(i, j) == 1;  // plain cycle arrows must be simple
  };
  auto cjoined = [&](int i, int j) {
    if (is_extra[i] || is_extra[j]) return false;
    if (block_edge[static_cast<size_t>(i) * n + j] >= 0 ||
        block_edge[static_cast<size_t>(j) * n + i] >= 0)
      return true;
    if (dropped[static_cast<size_t>(i) * n + j] || dropped[static_cast<size_t>(j) * n + i])
      return false;
    return aq.joined(i, j);  // weight-2 arrows still count as chords
  };
  CycleSearch cs;
  cs.n = n;
  cs.arrow = carrow;
  cs.joined = cjoined;
  std::vector<MarkedCycle> out;
  for (auto& cyc : cs.run()) {
    MarkedCycle mc;
    mc.vertices = cyc;
    mc.incoming_block.assign(cyc.size(), -1);
    bool marked = false;
    for (size_t t = 0; t < cyc.size(); ++t) {
      int prev = cyc[(t + cyc.size() - 1) % cyc.size()];
      int blk = block_edge[static_cast<size_t>(prev) * n + cyc[t]];
      mc.incoming_block[t] = blk;
      marked |= blk >= 0;
    }
    if (marked) out.push_back(std::move(mc));
  }
  return out;
}

}  // namespace qcox
