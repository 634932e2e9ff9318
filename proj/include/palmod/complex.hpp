#pragma once

// The quotient moduli complex of decorated trees.  Cells of dimension r are
// isomorphism classes of pairs (top tree, strict flag of nonempty
// subforests F_1 < ... < F_r); the i-th face removes F_i, collapsing it
// into the tree when i = 0.  Cells are stored by canonical encoding: each
// edge carries the least flag level containing it (0 when in none).

#include "palmod/snf.hpp"
#include "palmod/tree.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace palmod {

enum class Family { Sigma, PSigma, Fixture };

inline std::string family_token(Family f) {
  switch (f) {
    case Family::Sigma: return "sigma";
    case Family::PSigma: return "p-sigma";
    case Family::Fixture: return "fixture";
  }
  throw std::logic_error("unknown family");
}

inline Family family_from_token(const std::string& s) {
  if (s == "sigma") return Family::Sigma;
  if (s == "p-sigma") return Family::PSigma;
  if (s == "fixture") return Family::Fixture;
  throw std::runtime_error("unknown family token: " + s);
}

struct FamilySpec {
  Family family = Family::Sigma;
  int n = 0;
  int p = 0;  // theta edge count; 0 for the plain family

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

inline void validate_spec(const FamilySpec& spec) {
  if (spec.family == Family::Sigma) {
    if (spec.n < 1) throw std::invalid_argument("rank must be >= 1");
    if (spec.p != 0) throw std::invalid_argument("plain family takes no p");
  } else if (spec.family == Family::PSigma) {
    if (spec.p < 3 || !is_prime(spec.p)) throw std::invalid_argument("p must be an odd prime");
    if (spec.n < spec.p) throw std::invalid_argument("rank must be at least p");
  }
}

struct Cell {
  AdmissibleTree top;
  std::vector<Subforest> flag;  // strictly increasing, nonempty subforests

  int dimension() const { return static_cast<int>(flag.size()); }
};

inline void validate_cell(const Cell& c) {
  validate(c.top);
  Subforest prev{0};
  for (const Subforest& f : c.flag) {
    if (f.edge_mask == 0) throw std::invalid_argument("flag members must be nonempty");
    if ((prev.edge_mask & f.edge_mask) != prev.edge_mask || prev.edge_mask == f.edge_mask)
      throw std::invalid_argument("flag must be strictly nested");
    if (!is_subforest(c.top, f)) throw std::invalid_argument("flag members must be subforests");
    prev = f;
  }
}

// Level of an edge: least i with the edge in F_i, else 0.
inline std::vector<int> cell_levels(const Cell& c) {
  std::vector<int> lv(c.top.edges.size(), 0);
  for (std::size_t e = 0; e < lv.size(); ++e)
    for (std::size_t i = 0; i < c.flag.size(); ++i)
      if (c.flag[i].contains(static_cast<int>(e))) {
        lv[e] = static_cast<int>(i) + 1;
        break;
      }
  return lv;
}

inline std::string cell_canonical(const Cell& c) {
  validate_cell(c);
  return canonical_encoding(c.top, cell_levels(c));
}

inline Cell cell_from_encoding(const std::string& enc, int theta_edge_count = 0) {
  DecodedCell d = parse_encoding(enc, theta_edge_count);
  int r = 0;
  for (int l : d.edge_levels) r = std::max(r, l);
  Cell c;
  c.top = std::move(d.tree);
  for (int i = 1; i <= r; ++i) {
    Subforest f;
    for (std::size_t e = 0; e < d.edge_levels.size(); ++e)
      if (d.edge_levels[e] >= 1 && d.edge_levels[e] <= i) f.edge_mask |= 1u << e;
    c.flag.push_back(f);
  }
  validate_cell(c);
  // every level 1..r must actually be realized, or the flag was not strict
  std::vector<int> lv = cell_levels(c);
  if (lv != d.edge_levels) throw std::invalid_argument("encoding levels do not form a strict flag");
  return c;
}

// Face encodings of an r-cell given by (tree, levels), in face order
// 0..r.  Face 0 collapses F_1; inner faces drop one flag member; face r
// drops the top member.
inline std::vector<std::string> face_encodings(const AdmissibleTree& t, const std::vector<int>& levels) {
  int r = 0;
  for (int l : levels) r = std::max(r, l);
  if (r < 1) throw std::invalid_argument("0-cells have no faces");

  std::vector<std::string> out;
  {
    Subforest f1;
    for (std::size_t e = 0; e < levels.size(); ++e)
      if (levels[e] == 1) f1.edge_mask |= 1u << e;
    CollapseResult col = collapse_with_map(t, f1);
    std::vector<int> lv(col.tree.edges.size(), 0);
    for (std::size_t e = 0; e < levels.size(); ++e)
      if (col.edge_map[e] >= 0) lv[static_cast<std::size_t>(col.edge_map[e])] = std::max(0, levels[e] - 1);
    out.push_back(canonical_encoding(col.tree, lv));
  }
  for (int i = 1; i < r; ++i) {
    std::vector<int> lv(levels);
    for (int& l : lv)
      if (l > i) --l;
    out.push_back(canonical_encoding(t, lv));
  }
  {
    std::vector<int> lv(levels);
    for (int& l : lv)
      if (l == r) l = 0;
    out.push_back(canonical_encoding(t, lv));
  }
  return out;
}

inline std::vector<Cell> faces(const Cell& c) {
  validate_cell(c);
  std::vector<Cell> out;
  for (const std::string& enc : face_encodings(c.top, cell_levels(c)))
    out.push_back(cell_from_encoding(enc, c.top.theta_edge_count));
  return out;
}

struct QuotientComplex {
  FamilySpec spec;
  std::vector<std::vector<std::string>> cells;            // per dimension, sorted
  std::vector<std::vector<std::vector<int>>> cell_faces;  // [r][cell] -> r+1 face indices

  int dimension() const { return static_cast<int>(cells.size()) - 1; }
  long long cell_count() const {
    long long n = 0;
    for (const auto& layer : cells) n += static_cast<long long>(layer.size());
    return n;
  }
};

// Worker count for the build: PALMOD_WORKERS when set, else the hardware
// concurrency, always at least 1.
inline int worker_count() {
  if (const char* env = std::getenv("PALMOD_WORKERS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v < 1 || v > 256) throw std::invalid_argument("PALMOD_WORKERS must be in 1..256");
    return static_cast<int>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

namespace detail {

inline std::vector<AdmissibleTree> maximal_trees_for(const FamilySpec& spec) {
  if (spec.family == Family::Sigma) {
    if (spec.n == 1) {
      // Rank one: a single edge with both endpoints attaching.
      AdmissibleTree t;
      t.n_vertices = 2;
      t.edges = {{0, 1}};
      t.basepoint = 0;
      t.attach = {1, 1};
      return {canonical_representative(t)};
    }
    return enumerate_maximal_trees(spec.n);
  }
  if (spec.family == Family::PSigma) return enumerate_maximal_p_trees(spec.p, spec.n);
  throw std::invalid_argument("fixture complexes are constructed directly");
}

// All strict chains of nonempty subforests of one tree, emitted as
// (dimension, canonical encoding) pairs.
inline void emit_chains(const AdmissibleTree& t, std::vector<std::set<std::string>>& sink) {
  std::vector<Subforest> sf = subforests(t);
  std::vector<Subforest> nf;
  for (const Subforest& s : sf)
    if (s.edge_mask != 0) nf.push_back(s);

  std::vector<std::vector<int>> sup(nf.size());
  for (std::size_t i = 0; i < nf.size(); ++i)
    for (std::size_t j = 0; j < nf.size(); ++j)
      if (i != j && (nf[i].edge_mask & nf[j].edge_mask) == nf[i].edge_mask)
        sup[i].push_back(static_cast<int>(j));

  std::vector<int> chain;
  std::vector<int> levels(t.edges.size(), 0);
  std::function<void(int)> extend = [&](int last) {
    int r = static_cast<int>(chain.size());
    if (static_cast<std::size_t>(r) >= sink.size()) sink.resize(static_cast<std::size_t>(r) + 1);
    sink[static_cast<std::size_t>(r)].insert(canonical_encoding(t, levels));
    for (int j : sup[static_cast<std::size_t>(last)]) {
      chain.push_back(j);
      std::vector<std::size_t> newly;
      for (std::size_t e = 0; e < levels.size(); ++e)
        if (levels[e] == 0 && nf[static_cast<std::size_t>(j)].contains(static_cast<int>(e))) {
          levels[e] = r + 1;
          newly.push_back(e);
        }
      extend(j);
      for (std::size_t e : newly) levels[e] = 0;
      chain.pop_back();
    }
  };
  for (std::size_t i = 0; i < nf.size(); ++i) {
    chain.assign(1, static_cast<int>(i));
    std::fill(levels.begin(), levels.end(), 0);
    for (std::size_t e = 0; e < levels.size(); ++e)
      if (nf[i].contains(static_cast<int>(e))) levels[e] = 1;
    extend(static_cast<int>(i));
  }
}

}  // namespace detail

inline QuotientComplex build_complex(FamilySpec spec) {
  validate_spec(spec);
  std::vector<AdmissibleTree> tops = detail::maximal_trees_for(spec);

  // 0-cells: closure of the maximal trees under subforest collapse.
  std::map<std::string, AdmissibleTree> closure;
  std::vector<AdmissibleTree> queue = tops;
  while (!queue.empty()) {
    AdmissibleTree t = std::move(queue.back());
    queue.pop_back();
    std::string key = canonical_form(t);
    if (closure.count(key)) continue;
    for (const Subforest& s : subforests(t))
      if (s.edge_mask != 0) queue.push_back(collapse(t, s));
    closure.emplace(std::move(key), std::move(t));
  }

  // Higher cells: strict flags over every tree class in the closure.
  std::vector<const AdmissibleTree*> work;
  for (const auto& [key, t] : closure) work.push_back(&t);

  std::vector<std::set<std::string>> merged(1);
  int workers = std::min<int>(worker_count(), static_cast<int>(work.size()));
  if (workers <= 1) {
    for (const AdmissibleTree* t : work) detail::emit_chains(*t, merged);
  } else {
    std::vector<std::future<std::vector<std::set<std::string>>>> futs;
    for (int w = 0; w < workers; ++w)
      futs.push_back(std::async(std::launch::async, [&, w] {
        std::vector<std::set<std::string>> sink(1);
        for (std::size_t i = static_cast<std::size_t>(w); i < work.size(); i += static_cast<std::size_t>(workers))
          detail::emit_chains(*work[i], sink);
        return sink;
      }));
    for (auto& f : futs) {
      std::vector<std::set<std::string>> sink = f.get();
      if (sink.size() > merged.size()) merged.resize(sink.size());
      for (std::size_t r = 1; r < sink.size(); ++r)
        merged[r].insert(sink[r].begin(), sink[r].end());
    }
  }

  QuotientComplex q;
  q.spec = spec;
  q.cells.resize(merged.size());
  q.cell_faces.resize(merged.size());
  for (const auto& [key, t] : closure) q.cells[0].push_back(key);
  for (std::size_t r = 1; r < merged.size(); ++r)
    q.cells[r].assign(merged[r].begin(), merged[r].end());

  for (std::size_t r = 1; r < q.cells.size(); ++r) {
    q.cell_faces[r].reserve(q.cells[r].size());
    for (const std::string& enc : q.cells[r]) {
      DecodedCell d = parse_encoding(enc, spec.p);
      std::vector<int> idx;
      for (const std::string& fe : face_encodings(d.tree, d.edge_levels)) {
        const auto& prev = q.cells[r - 1];
        auto it = std::lower_bound(prev.begin(), prev.end(), fe);
        if (it == prev.end() || *it != fe) throw std::logic_error("face cell missing from complex");
        idx.push_back(static_cast<int>(it - prev.begin()));
      }
      q.cell_faces[r].push_back(std::move(idx));
    }
  }
  return q;
}

struct ComplexStats {
  std::vector<long long> f_vector;
  int dimension = 0;
  int components = 0;
  long long euler = 0;
};

inline ComplexStats stats(const QuotientComplex& q) {
  ComplexStats s;
  s.dimension = q.dimension();
  for (const auto& layer : q.cells) s.f_vector.push_back(static_cast<long long>(layer.size()));
  for (std::size_t r = 0; r < s.f_vector.size(); ++r)
    s.euler += (r % 2 == 0) ? s.f_vector[r] : -s.f_vector[r];
  detail::Dsu dsu(static_cast<int>(q.cells[0].size()));
  if (q.cells.size() > 1)
    for (const auto& f : q.cell_faces[1]) dsu.unite(f[0], f[1]);
  std::set<int> roots;
  for (int v = 0; v < static_cast<int>(q.cells[0].size()); ++v) roots.insert(dsu.find(v));
  s.components = static_cast<int>(roots.size());
  return s;
}

struct CubePair {
  AdmissibleTree tree;
  Subforest forest;
  bool degenerate = false;  // some stabilizer element permutes the forest edges oddly
  std::string encoding;
};

// Isomorphism classes of (maximal tree, inclusion-maximal subforest).
inline std::vector<CubePair> enumerate_maximal_cubes(FamilySpec spec) {
  validate_spec(spec);
  int expected = (spec.family == Family::Sigma) ? spec.n - 1 : spec.n - spec.p;
  std::map<std::string, CubePair> classes;
  for (const AdmissibleTree& t : detail::maximal_trees_for(spec)) {
    std::vector<Subforest> sf = subforests(t);
    for (const Subforest& s : sf) {
      bool maximal = true;
      for (const Subforest& o : sf)
        if (o.edge_mask != s.edge_mask && (o.edge_mask & s.edge_mask) == s.edge_mask) {
          maximal = false;
          break;
        }
      if (!maximal) continue;
      if (s.size() != expected) throw std::logic_error("maximal subforest has unexpected size");
      std::vector<int> lv(t.edges.size(), 0);
      for (std::size_t e = 0; e < lv.size(); ++e)
        if (s.contains(static_cast<int>(e))) lv[e] = 1;
      std::string enc = canonical_encoding(t, lv);
      if (classes.count(enc)) continue;
      classes.emplace(enc, CubePair{t, s, has_odd_edge_permutation(t, s), enc});
    }
  }
  std::vector<CubePair> out;
  for (auto& [enc, c] : classes) out.push_back(std::move(c));
  return out;
}

// Terminal edges of a forest: members with an endpoint that is a leaf of the
// tree or an attaching vertex.
inline std::vector<int> terminal_edges(const AdmissibleTree& t, Subforest s) {
  std::vector<int> val = valences(t);
  std::vector<int> out;
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    if (!s.contains(static_cast<int>(e))) continue;
    auto [u, v] = t.edges[e];
    if (val[u] == 1 || val[v] == 1 || t.attach[u] || t.attach[v]) out.push_back(static_cast<int>(e));
  }
  return out;
}

struct FreeFaceEntry {
  std::string cube;
  bool degenerate = false;
  std::vector<std::string> candidate_faces;  // one per stabilizer orbit of terminal edges
  std::string free_face;                     // empty when none found
  bool pass = false;
};

struct FreeFaceReport {
  FamilySpec spec;
  std::vector<FreeFaceEntry> entries;
  bool all_pass = false;
};

// Each top cube must expose a face through which it can be collapsed: a
// codimension-one cube class arising, over all cubes and all stabilizer
// orbits of terminal edges, exactly once.
inline FreeFaceReport verify_free_faces(FamilySpec spec) {
  std::vector<CubePair> cubes = enumerate_maximal_cubes(spec);
  FreeFaceReport rep;
  rep.spec = spec;

  std::map<std::string, int> face_count;
  for (const CubePair& c : cubes) {
    FreeFaceEntry entry;
    entry.cube = c.encoding;
    entry.degenerate = c.degenerate;

    std::vector<int> terms = terminal_edges(c.tree, c.forest);
    detail::Dsu dsu(static_cast<int>(c.tree.edges.size()));
    for (const TreeAutomorphism& aut : forest_stabilizer(c.tree, c.forest)) {
      std::vector<int> ep = edge_permutation(c.tree, aut);
      for (std::size_t e = 0; e < ep.size(); ++e) dsu.unite(static_cast<int>(e), ep[e]);
    }
    std::set<int> seen_orbits;
    for (int e : terms) {
      if (!seen_orbits.insert(dsu.find(e)).second) continue;
      CollapseResult col = collapse_with_map(c.tree, Subforest{1u << e});
      std::vector<int> lv(col.tree.edges.size(), 0);
      for (std::size_t old = 0; old < c.tree.edges.size(); ++old)
        if (col.edge_map[old] >= 0 && c.forest.contains(static_cast<int>(old)))
          lv[static_cast<std::size_t>(col.edge_map[old])] = 1;
      std::string fe = canonical_encoding(col.tree, lv);
      entry.candidate_faces.push_back(fe);
      ++face_count[fe];
    }
    rep.entries.push_back(std::move(entry));
  }

  rep.all_pass = true;
  for (FreeFaceEntry& entry : rep.entries) {
    if (entry.candidate_faces.empty()) {
      // A zero-dimensional cube has nothing to collapse; vacuously fine.
      entry.pass = true;
      continue;
    }
    for (const std::string& fe : entry.candidate_faces)
      if (face_count[fe] == 1) {
        entry.free_face = fe;
        entry.pass = true;
        break;
      }
    rep.all_pass = rep.all_pass && entry.pass;
  }
  return rep;
}

// Repeatedly performs elementary collapses (remove a cell together with a
// face occurring exactly once in the whole complex); true when a single
// vertex remains.
inline bool greedy_collapsibility(const QuotientComplex& q) {
  int dim = q.dimension();
  std::vector<std::vector<char>> alive(static_cast<std::size_t>(dim) + 1);
  for (int r = 0; r <= dim; ++r) alive[r].assign(q.cells[r].size(), 1);

  // coface occurrence counts per cell
  std::vector<std::vector<int>> cnt(static_cast<std::size_t>(dim) + 1);
  for (int r = 0; r <= dim; ++r) cnt[r].assign(q.cells[r].size(), 0);
  for (int r = 1; r <= dim; ++r)
    for (const auto& fl : q.cell_faces[r])
      for (int f : fl) ++cnt[r - 1][f];

  long long total = q.cell_count();
  bool progress = true;
  while (progress) {
    progress = false;
    for (int r = 0; r < dim && !progress; ++r) {
      for (std::size_t i = 0; i < q.cells[r].size() && !progress; ++i) {
        if (!alive[r][i] || cnt[r][i] != 1) continue;
        // locate the unique live coface
        int coface = -1;
        for (std::size_t c = 0; c < q.cells[r + 1].size() && coface < 0; ++c) {
          if (!alive[r + 1][c]) continue;
          for (int f : q.cell_faces[r + 1][c])
            if (f == static_cast<int>(i)) {
              coface = static_cast<int>(c);
              break;
            }
        }
        if (coface < 0) throw std::logic_error("coface bookkeeping out of sync");
        alive[r][i] = 0;
        alive[r + 1][static_cast<std::size_t>(coface)] = 0;
        total -= 2;
        for (int f : q.cell_faces[r + 1][static_cast<std::size_t>(coface)]) --cnt[r][f];
        if (r >= 1)
          for (int f : q.cell_faces[r][i]) --cnt[r - 1][f];
        progress = true;
      }
    }
  }
  return total == 1;
}

// A minimal non-contractible fixture: the circle as three vertices and
// three edges.
inline QuotientComplex make_circle_complex() {
  QuotientComplex q;
  q.spec = FamilySpec{Family::Fixture, 1, 0};
  q.cells = {{"v0", "v1", "v2"}, {"e01", "e12", "e20"}};
  q.cell_faces.resize(2);
  q.cell_faces[1] = {{1, 0}, {2, 1}, {0, 2}};
  return q;
}

}  // namespace palmod
