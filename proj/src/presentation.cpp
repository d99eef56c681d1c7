#include "qcox/presentation.hpp"

#include <algorithm>
#include <sstream>

namespace qcox {

CoxeterMatrix coxeter_matrix(const Quiver& q) {
  CoxeterMatrix m(q.size());
  for (int i = 0; i < q.size(); ++i) {
    for (int j = i + 1; j < q.size(); ++j) {
      int b = std::abs(q.entry(i, j));
      if (b == 0)
        m.set(i, j, 2);
      else if (b == 1)
        m.set(i, j, 3);
      else
        throw DoubleArrowError("coxeter_matrix: arrow of multiplicity " + std::to_string(b) +
                               " between " + std::to_string(i) + " and " + std::to_string(j));
    }
  }
  return m;
}

CoxeterMatrix coxeter_matrix(const Diagram& d) {
  CoxeterMatrix m(d.size());
  for (int i = 0; i < d.size(); ++i)
    for (int j = i + 1; j < d.size(); ++j) {
      int w = std::abs(d.entry(i, j));
      m.set(i, j, w == 0 ? 2 : w == 1 ? 3 : 4);
    }
  return m;
}

namespace {

Word pair_relator(int i, int j, int m) {
  Word w;
  for (int t = 0; t < m; ++t) {
    w.push_back(i);
    w.push_back(j);
  }
  return w;
}

// (x_0 x_1 ... x_{d-1} x_{d-2} ... x_1)^2 where x_t is the word for cycle
// position t.  For plain cycles x_t is a single letter.
Word zigzag_relator(const std::vector<Word>& x) {
  Word half;
  for (const Word& u : x) half.insert(half.end(), u.begin(), u.end());
  for (size_t t = x.size() - 1; t-- > 1;)
    half.insert(half.end(), x[t].begin(), x[t].end());
  Word w = half;
  w.insert(w.end(), half.begin(), half.end());
  return w;
}

std::string cycle_note(const std::vector<int>& cyc) {
  std::string s = "cycle";
  for (size_t t = 0; t < cyc.size(); ++t) {
    s += t == 0 ? ' ' : '>';
    s += std::to_string(cyc[t]);
  }
  return s;
}

void add_pair_relators(Presentation& p, const CoxeterMatrix& m) {
  for (int i = 0; i < m.n; ++i) {
    for (int j = i + 1; j < m.n; ++j) {
      Relator r;
      r.word = normalize_relator(pair_relator(i, j, m.at(i, j)));
      r.kind = RelatorKind::CoxeterPair;
      r.note = "pair " + std::to_string(i) + "," + std::to_string(j) +
               " m=" + std::to_string(m.at(i, j));
      p.relators.push_back(std::move(r));
    }
  }
}

void add_cycle_relators(Presentation& p, const std::vector<std::vector<int>>& cycles) {
  for (const auto& cyc : cycles) {
    std::vector<Word> x;
    x.reserve(cyc.size());
    for (int v : cyc) x.push_back(Word{v});
    Relator r;
    r.word = normalize_relator(zigzag_relator(x));
    r.kind = RelatorKind::ChordlessCycle;
    r.note = cycle_note(cyc);
    p.relators.push_back(std::move(r));
  }
}

}  // namespace

Presentation presentation_of(const AnnotatedQuiver& aq) {
  validate(aq);
  Presentation p;
  p.ngens = aq.size();
  CoxeterMatrix m = aq.weighted() ? coxeter_matrix(aq.diagram()) : coxeter_matrix(aq.quiver());
  add_pair_relators(p, m);
  if (aq.weighted())
    add_cycle_relators(p, chordless_oriented_cycles(aq.diagram()));
  else
    add_cycle_relators(p, chordless_oriented_cycles(aq.quiver()));
  for (const MarkedCycle& mc : contracted_cycles(aq)) {
    std::vector<Word> x;
    x.reserve(mc.vertices.size());
    for (size_t t = 0; t < mc.vertices.size(); ++t) {
      int v = mc.vertices[t];
      int b = mc.incoming_block[t];
      if (b < 0) {
        x.push_back(Word{v});
      } else if (aq.blocks[b].kind == BlockKind::IV) {
        int e1 = std::min(aq.blocks[b].extra[0], aq.blocks[b].extra[1]);
        int e2 = std::max(aq.blocks[b].extra[0], aq.blocks[b].extra[1]);
        // e1 and e2 commute (never joined), so their order is immaterial.
        x.push_back(Word{e1, e2, v, e2, e1});
      } else {
        int e0 = aq.blocks[b].extra[0];
        x.push_back(Word{e0, v, e0});
      }
    }
    Relator r;
    r.word = normalize_relator(zigzag_relator(x));
    r.kind = RelatorKind::BlockCycle;
    r.note = cycle_note(mc.vertices) + " with blocks";
    p.relators.push_back(std::move(r));
  }
  return p;
}

Presentation presentation_of(const Quiver& q) {
  return presentation_of(AnnotatedQuiver{q, {}});
}

Presentation presentation_of(const Diagram& d) {
  return presentation_of(AnnotatedQuiver{d, {}});
}

Substitution mutation_substitution(const Quiver& q, int k, bool outgoing) {
  const int n = q.size();
  if (k < 0 || k >= n) throw InvalidInput("mutation_substitution: vertex out of range");
  Substitution sub;
  sub.image.resize(n);
  for (int i = 0; i < n; ++i) {
    bool conj = outgoing ? q.has_arrow(k, i) : q.has_arrow(i, k);
    if (conj)
      sub.image[i] = Word{k, i, k};
    else
      sub.image[i] = Word{i};
  }
  return sub;
}

std::string to_text(const Presentation& p) {
  std::ostringstream os;
  os << "gens " << p.ngens << "\n";
  for (const Relator& r : p.relators) {
    os << "rel";
    for (int x : r.word) os << ' ' << x + 1;
    os << "\n";
  }
  return os.str();
}

Presentation presentation_from_text(const std::string& text) {
  Presentation p;
  std::istringstream is(text);
  std::string line;
  bool have_gens = false;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank line
    if (tag == "gens") {
      if (have_gens) throw InvalidInput("presentation text: repeated gens line");
      if (!(ls >> p.ngens) || p.ngens < 0) throw InvalidInput("presentation text: bad gens line");
      have_gens = true;
    } else if (tag == "rel") {
      if (!have_gens) throw InvalidInput("presentation text: rel before gens");
      Relator r;
      int x;
      while (ls >> x) {
        if (x < 1 || x > p.ngens) throw InvalidInput("presentation text: letter out of range");
        r.word.push_back(x - 1);
      }
      if (r.word.empty()) throw InvalidInput("presentation text: empty relator");
      p.relators.push_back(std::move(r));
    } else {
      throw InvalidInput("presentation text: unknown line tag '" + tag + "'");
    }
  }
  if (!have_gens) throw InvalidInput("presentation text: missing gens line");
  return p;
}

}  // namespace qcox
