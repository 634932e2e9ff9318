#pragma once

// Decorated trees: a finite tree with a basepoint, a set of attaching
// vertices, and optionally a distinguished vertex carrying a theta-graph
// decoration (a fixed number of parallel edges added when the tree is
// doubled).  Includes canonical encodings, subforests, collapses,
// automorphisms, doubling, and the enumerators for the maximal classes.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "palmod/snf.hpp"

namespace palmod {

struct AdmissibleTree {
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted ascending
  int basepoint = 0;
  std::vector<char> attach;                // per vertex, 1 = attaching
  int theta_vertex = -1;                   // -1 when absent
  int theta_edge_count = 0;                // parallel edge count; 0 when absent

  friend bool operator==(const AdmissibleTree&, const AdmissibleTree&) = default;
};

namespace detail {

inline std::vector<std::vector<int>> adjacency(const AdmissibleTree& t) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(t.n_vertices));
  for (const auto& [u, v] : t.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

inline void validate(const AdmissibleTree& t) {
  if (t.n_vertices < 1) throw std::invalid_argument("tree needs at least one vertex");
  if (t.basepoint < 0 || t.basepoint >= t.n_vertices) throw std::invalid_argument("basepoint out of range");
  if (static_cast<int>(t.attach.size()) != t.n_vertices) throw std::invalid_argument("attach flags size mismatch");
  if (static_cast<int>(t.edges.size()) != t.n_vertices - 1) throw std::invalid_argument("edge count must be n_vertices - 1");
  if ((t.theta_vertex >= 0) != (t.theta_edge_count > 0))
    throw std::invalid_argument("theta vertex and theta edge count must be set together");
  if (t.theta_vertex >= t.n_vertices) throw std::invalid_argument("theta vertex out of range");
  if (!std::is_sorted(t.edges.begin(), t.edges.end())) throw std::invalid_argument("edges must be sorted");
  detail::Dsu dsu(t.n_vertices);
  for (const auto& [u, v] : t.edges) {
    if (u < 0 || v >= t.n_vertices || u >= v) throw std::invalid_argument("bad edge endpoints");
    if (dsu.find(u) == dsu.find(v)) throw std::invalid_argument("edges contain a cycle");
    dsu.unite(u, v);
  }
  bool has_attach = false;
  for (char a : t.attach) has_attach |= (a != 0);
  if (!has_attach) throw std::invalid_argument("attach set must be nonempty");
  if (!t.attach[t.basepoint]) throw std::invalid_argument("basepoint must be attaching");
}

inline std::vector<int> valences(const AdmissibleTree& t) {
  std::vector<int> val(static_cast<std::size_t>(t.n_vertices), 0);
  for (const auto& [u, v] : t.edges) {
    ++val[u];
    ++val[v];
  }
  return val;
}

// First Betti number of the doubled graph: attach count - 1, plus the
// theta contribution when present.
inline int rank_of(const AdmissibleTree& t) {
  int a = 0;
  for (char f : t.attach) a += (f != 0);
  return a - 1 + t.theta_edge_count;
}

// Canonical encoding of a decorated tree with one level value per edge.
// Grammar:  node = '(' ['a'] ['o'] child* ')',  child = '[' level ':' node ']'
// rooted at the basepoint, children sorted as strings.  Equal encodings
// characterize isomorphism of decorated level-labelled trees.
inline std::string canonical_encoding(const AdmissibleTree& t, const std::vector<int>& edge_levels) {
  if (edge_levels.size() != t.edges.size()) throw std::invalid_argument("one level per edge required");
  auto adj = detail::adjacency(t);
  std::map<std::pair<int, int>, int> edge_index;
  for (std::size_t e = 0; e < t.edges.size(); ++e) edge_index[t.edges[e]] = static_cast<int>(e);
  auto level_of = [&](int u, int v) {
    return edge_levels[static_cast<std::size_t>(edge_index.at(std::minmax(u, v)))];
  };

  std::function<std::string(int, int)> enc = [&](int v, int parent) {
    std::vector<std::string> kids;
    for (int w : adj[v]) {
      if (w == parent) continue;
      kids.push_back("[" + std::to_string(level_of(v, w)) + ":" + enc(w, v) + "]");
    }
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    if (t.attach[v]) s += 'a';
    if (v == t.theta_vertex) s += 'o';
    for (const std::string& k : kids) s += k;
    s += ')';
    return s;
  };
  return enc(t.basepoint, -1);
}

inline std::string canonical_form(const AdmissibleTree& t) {
  return canonical_encoding(t, std::vector<int>(t.edges.size(), 0));
}

struct DecodedCell {
  AdmissibleTree tree;
  std::vector<int> edge_levels;  // aligned with tree.edges
};

// Inverse of canonical_encoding; vertices are numbered in DFS discovery
// order with the basepoint as 0.  theta_edge_count is not part of the
// grammar, so the caller supplies it for trees carrying the 'o' flag.
inline DecodedCell parse_encoding(const std::string& s, int theta_edge_count = 0) {
  AdmissibleTree t;
  std::vector<std::tuple<int, int, int>> raw_edges;  // u, v, level
  std::size_t pos = 0;

  auto fail = [&]() -> void { throw std::invalid_argument("malformed tree encoding"); };
  std::function<int()> node = [&]() -> int {
    if (pos >= s.size() || s[pos] != '(') fail();
    ++pos;
    int id = t.n_vertices++;
    t.attach.push_back(0);
    if (pos < s.size() && s[pos] == 'a') {
      t.attach[id] = 1;
      ++pos;
    }
    if (pos < s.size() && s[pos] == 'o') {
      if (t.theta_vertex >= 0) fail();
      t.theta_vertex = id;
      ++pos;
    }
    while (pos < s.size() && s[pos] == '[') {
      ++pos;
      std::size_t colon = s.find(':', pos);
      if (colon == std::string::npos) fail();
      int level = 0;
      for (std::size_t k = pos; k < colon; ++k) {
        if (s[k] < '0' || s[k] > '9') fail();
        level = level * 10 + (s[k] - '0');
      }
      pos = colon + 1;
      int child = node();
      if (pos >= s.size() || s[pos] != ']') fail();
      ++pos;
      raw_edges.emplace_back(std::min(id, child), std::max(id, child), level);
    }
    if (pos >= s.size() || s[pos] != ')') fail();
    ++pos;
    return id;
  };
  node();
  if (pos != s.size()) fail();

  std::sort(raw_edges.begin(), raw_edges.end());
  DecodedCell out;
  for (const auto& [u, v, level] : raw_edges) {
    t.edges.emplace_back(u, v);
    out.edge_levels.push_back(level);
  }
  t.basepoint = 0;
  t.theta_edge_count = (t.theta_vertex >= 0) ? theta_edge_count : 0;
  if (t.theta_vertex >= 0 && theta_edge_count <= 0)
    throw std::invalid_argument("theta-decorated encoding needs a positive theta edge count");
  out.tree = std::move(t);
  validate(out.tree);
  return out;
}

inline AdmissibleTree canonical_representative(const AdmissibleTree& t) {
  return parse_encoding(canonical_form(t), t.theta_edge_count).tree;
}

// Edge subsets are bitmasks over the (sorted) edge list.
struct Subforest {
  std::uint32_t edge_mask = 0;

  bool contains(int e) const { return (edge_mask >> e) & 1u; }
  int size() const {
    int c = 0;
    for (std::uint32_t m = edge_mask; m; m &= m - 1) ++c;
    return c;
  }
  friend bool operator==(const Subforest&, const Subforest&) = default;
  friend auto operator<=>(const Subforest&, const Subforest&) = default;
};

// A subforest may meet each of its connected components in at most one
// attaching vertex (the empty set qualifies).
inline bool is_subforest(const AdmissibleTree& t, Subforest s) {
  detail::Dsu dsu(t.n_vertices);
  for (std::size_t e = 0; e < t.edges.size(); ++e)
    if (s.contains(static_cast<int>(e))) dsu.unite(t.edges[e].first, t.edges[e].second);
  std::vector<int> attach_count(static_cast<std::size_t>(t.n_vertices), 0);
  for (int v = 0; v < t.n_vertices; ++v)
    if (t.attach[v] && ++attach_count[dsu.find(v)] > 1) return false;
  return true;
}

// All subforests, in ascending bitmask order.
inline std::vector<Subforest> subforests(const AdmissibleTree& t) {
  if (t.edges.size() > 20) throw std::length_error("edge count too large for subforest enumeration");
  std::vector<Subforest> out;
  std::uint32_t total = 1u << t.edges.size();
  for (std::uint32_t m = 0; m < total; ++m)
    if (is_subforest(t, Subforest{m})) out.push_back(Subforest{m});
  return out;
}

struct CollapseResult {
  AdmissibleTree tree;
  std::vector<int> edge_map;  // old edge index -> new edge index, -1 if collapsed
};

// Contracts every edge of the subforest.  Vertex classes are renumbered by
// their smallest member; decorations merge by union.
inline CollapseResult collapse_with_map(const AdmissibleTree& t, Subforest s) {
  if (!is_subforest(t, s)) throw std::invalid_argument("collapse requires a subforest");
  detail::Dsu dsu(t.n_vertices);
  for (std::size_t e = 0; e < t.edges.size(); ++e)
    if (s.contains(static_cast<int>(e))) dsu.unite(t.edges[e].first, t.edges[e].second);

  std::vector<int> smallest(static_cast<std::size_t>(t.n_vertices), -1);
  for (int v = 0; v < t.n_vertices; ++v) {
    int r = dsu.find(v);
    if (smallest[r] < 0) smallest[r] = v;
  }
  std::vector<int> reps;
  for (int v = 0; v < t.n_vertices; ++v)
    if (smallest[dsu.find(v)] == v) reps.push_back(v);
  std::vector<int> new_id(static_cast<std::size_t>(t.n_vertices), -1);
  for (std::size_t i = 0; i < reps.size(); ++i) new_id[reps[i]] = static_cast<int>(i);
  auto cls = [&](int v) { return new_id[smallest[dsu.find(v)]]; };

  AdmissibleTree out;
  out.n_vertices = static_cast<int>(reps.size());
  out.attach.assign(static_cast<std::size_t>(out.n_vertices), 0);
  for (int v = 0; v < t.n_vertices; ++v)
    if (t.attach[v]) out.attach[cls(v)] = 1;
  out.basepoint = cls(t.basepoint);
  out.theta_vertex = (t.theta_vertex >= 0) ? cls(t.theta_vertex) : -1;
  out.theta_edge_count = t.theta_edge_count;

  std::vector<std::pair<std::pair<int, int>, int>> kept;  // (edge, old index)
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    if (s.contains(static_cast<int>(e))) continue;
    int a = cls(t.edges[e].first), b = cls(t.edges[e].second);
    kept.push_back({std::minmax(a, b), static_cast<int>(e)});
  }
  std::sort(kept.begin(), kept.end());

  CollapseResult res;
  res.edge_map.assign(t.edges.size(), -1);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    out.edges.push_back(kept[i].first);
    res.edge_map[static_cast<std::size_t>(kept[i].second)] = static_cast<int>(i);
  }
  res.tree = std::move(out);
  return res;
}

inline AdmissibleTree collapse(const AdmissibleTree& t, Subforest s) {
  return collapse_with_map(t, s).tree;
}

struct TreeAutomorphism {
  std::vector<int> vertex_map;
  friend bool operator==(const TreeAutomorphism&, const TreeAutomorphism&) = default;
};

// All automorphisms fixing the basepoint and preserving the decorations
// (attach flags and the theta vertex).  Children with equal decorated
// subtree codes are interchangeable; the matcher walks code groups and
// backtracks through every bijection.
inline std::vector<TreeAutomorphism> automorphisms(const AdmissibleTree& t) {
  auto adj = detail::adjacency(t);
  std::map<std::pair<int, int>, std::string> code_memo;
  std::function<const std::string&(int, int)> code = [&](int v, int parent) -> const std::string& {
    auto key = std::make_pair(v, parent);
    auto it = code_memo.find(key);
    if (it != code_memo.end()) return it->second;
    std::vector<std::string> kids;
    for (int w : adj[v])
      if (w != parent) kids.push_back(code(w, v));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    if (t.attach[v]) s += 'a';
    if (v == t.theta_vertex) s += 'o';
    for (const std::string& k : kids) s += k;
    s += ')';
    return code_memo.emplace(key, std::move(s)).first->second;
  };

  std::vector<int> perm(static_cast<std::size_t>(t.n_vertices), -1);
  std::vector<TreeAutomorphism> out;

  std::function<void(int, int, int, int, const std::function<void()>&)> match =
      [&](int a, int pa, int b, int pb, const std::function<void()>& cont) {
        std::map<std::string, std::pair<std::vector<int>, std::vector<int>>> groups;
        for (int w : adj[a])
          if (w != pa) groups[code(w, a)].first.push_back(w);
        for (int w : adj[b])
          if (w != pb) groups[code(w, b)].second.push_back(w);
        for (const auto& [c, g] : groups)
          if (g.first.size() != g.second.size()) return;

        std::vector<const std::pair<std::vector<int>, std::vector<int>>*> glist;
        for (const auto& [c, g] : groups) glist.push_back(&g);

        std::function<void(std::size_t)> do_group = [&](std::size_t gi) {
          if (gi == glist.size()) {
            cont();
            return;
          }
          const auto& [as, bs] = *glist[gi];
          std::vector<char> used(bs.size(), 0);
          std::function<void(std::size_t)> assign = [&](std::size_t idx) {
            if (idx == as.size()) {
              do_group(gi + 1);
              return;
            }
            for (std::size_t j = 0; j < bs.size(); ++j) {
              if (used[j]) continue;
              used[j] = 1;
              perm[static_cast<std::size_t>(as[idx])] = bs[j];
              match(as[idx], a, bs[j], b, [&, idx] { assign(idx + 1); });
              perm[static_cast<std::size_t>(as[idx])] = -1;
              used[j] = 0;
            }
          };
          assign(0);
        };
        do_group(0);
      };

  perm[static_cast<std::size_t>(t.basepoint)] = t.basepoint;
  match(t.basepoint, -1, t.basepoint, -1, [&] { out.push_back(TreeAutomorphism{perm}); });
  return out;
}

// Image of each edge index under a tree automorphism.
inline std::vector<int> edge_permutation(const AdmissibleTree& t, const TreeAutomorphism& aut) {
  std::map<std::pair<int, int>, int> edge_index;
  for (std::size_t e = 0; e < t.edges.size(); ++e) edge_index[t.edges[e]] = static_cast<int>(e);
  std::vector<int> out(t.edges.size());
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    auto [u, v] = t.edges[e];
    out[e] = edge_index.at(std::minmax(aut.vertex_map[static_cast<std::size_t>(u)],
                                       aut.vertex_map[static_cast<std::size_t>(v)]));
  }
  return out;
}

// Automorphisms mapping the given edge set onto itself (any edge set is
// accepted, not only subforests).
inline std::vector<TreeAutomorphism> forest_stabilizer(const AdmissibleTree& t, Subforest s) {
  std::vector<TreeAutomorphism> out;
  for (const TreeAutomorphism& aut : automorphisms(t)) {
    std::vector<int> ep = edge_permutation(t, aut);
    bool stable = true;
    for (std::size_t e = 0; e < ep.size() && stable; ++e)
      if (s.contains(static_cast<int>(e)) != s.contains(ep[e])) stable = false;
    if (stable) out.push_back(aut);
  }
  return out;
}

// True when some stabilizer element induces an odd permutation of the edges
// in the set (such a cube class is degenerate).
inline bool has_odd_edge_permutation(const AdmissibleTree& t, Subforest s) {
  std::vector<int> members;
  for (std::size_t e = 0; e < t.edges.size(); ++e)
    if (s.contains(static_cast<int>(e))) members.push_back(static_cast<int>(e));
  std::vector<int> position(t.edges.size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) position[static_cast<std::size_t>(members[i])] = static_cast<int>(i);

  for (const TreeAutomorphism& aut : forest_stabilizer(t, s)) {
    std::vector<int> ep = edge_permutation(t, aut);
    std::vector<int> restricted(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
      restricted[i] = position[static_cast<std::size_t>(ep[static_cast<std::size_t>(members[i])])];
    // parity from cycle structure
    std::vector<char> seen(restricted.size(), 0);
    int transpositions = 0;
    for (std::size_t i = 0; i < restricted.size(); ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(restricted[j])) {
        seen[j] = 1;
        ++len;
      }
      transpositions += len - 1;
    }
    if (transpositions % 2 == 1) return true;
  }
  return false;
}

// Two copies of the tree glued along the attaching vertices.  A theta
// decoration contributes its parallel edges between the two copies of the
// theta vertex, each subdivided once so the swap involution fixes the
// midpoints pointwise.  The rotation cyclically permutes those subdivided
// edges and is the identity elsewhere.
struct DoubledGraph {
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // multigraph, sorted with repeats
  std::vector<int> involution;
  std::vector<int> rotation;

  int component_count() const {
    detail::Dsu dsu(n_vertices);
    for (const auto& [u, v] : edges) dsu.unite(u, v);
    std::set<int> roots;
    for (int v = 0; v < n_vertices; ++v) roots.insert(dsu.find(v));
    return static_cast<int>(roots.size());
  }
  int betti() const {
    return static_cast<int>(edges.size()) - n_vertices + component_count();
  }
};

inline DoubledGraph double_graph(const AdmissibleTree& t) {
  validate(t);
  DoubledGraph g;
  // copy 0 keeps the original ids; non-attaching vertices get a twin.
  std::vector<int> twin(static_cast<std::size_t>(t.n_vertices));
  g.n_vertices = t.n_vertices;
  for (int v = 0; v < t.n_vertices; ++v) twin[v] = t.attach[v] ? v : g.n_vertices++;

  for (const auto& [u, v] : t.edges) {
    g.edges.emplace_back(u, v);
    g.edges.emplace_back(std::minmax(twin[u], twin[v]));
  }

  std::vector<int> mids;
  if (t.theta_vertex >= 0) {
    int o0 = t.theta_vertex, o1 = twin[t.theta_vertex];
    for (int k = 0; k < t.theta_edge_count; ++k) {
      int mid = g.n_vertices++;
      mids.push_back(mid);
      g.edges.emplace_back(std::minmax(o0, mid));
      g.edges.emplace_back(std::minmax(o1, mid));
    }
  }
  std::sort(g.edges.begin(), g.edges.end());

  g.involution.resize(static_cast<std::size_t>(g.n_vertices));
  g.rotation.resize(static_cast<std::size_t>(g.n_vertices));
  for (int v = 0; v < g.n_vertices; ++v) g.involution[v] = g.rotation[v] = v;
  for (int v = 0; v < t.n_vertices; ++v) {
    g.involution[v] = twin[v];
    g.involution[twin[v]] = v;
  }
  for (std::size_t k = 0; k < mids.size(); ++k)
    g.rotation[static_cast<std::size_t>(mids[k])] = mids[(k + 1) % mids.size()];
  return g;
}

// Maximal trees for the full-inversion family at rank n: 2n vertices, every
// valence 1 or 3, basepoint a leaf, attaching set = all leaves.
inline std::vector<AdmissibleTree> enumerate_maximal_trees(int n) {
  if (n < 2) throw std::invalid_argument("maximal tree enumeration needs rank >= 2");
  int target = 2 * n;

  // Leaf growth from the basepoint, deduplicating rooted shapes per size.
  struct Shape {
    int nv;
    std::vector<std::pair<int, int>> edges;
  };
  auto shape_key = [](const Shape& s) {
    AdmissibleTree t;
    t.n_vertices = s.nv;
    t.edges = s.edges;
    std::sort(t.edges.begin(), t.edges.end());
    t.basepoint = 0;
    t.attach.assign(static_cast<std::size_t>(s.nv), 1);  // uniform flags: pure shape
    return canonical_form(t);
  };

  std::map<std::string, Shape> layer;
  {
    Shape s0{1, {}};
    layer[shape_key(s0)] = s0;
  }
  for (int size = 1; size < target; ++size) {
    std::map<std::string, Shape> next;
    for (const auto& [key, s] : layer) {
      std::vector<int> val(static_cast<std::size_t>(s.nv), 0);
      for (const auto& [u, v] : s.edges) {
        ++val[u];
        ++val[v];
      }
      for (int v = 0; v < s.nv; ++v) {
        if (val[v] >= 3) continue;
        if (v == 0 && val[v] >= 1) continue;  // basepoint stays a leaf
        Shape grown{s.nv + 1, s.edges};
        grown.edges.emplace_back(v, s.nv);
        next.emplace(shape_key(grown), std::move(grown));
      }
    }
    layer = std::move(next);
  }

  std::map<std::string, AdmissibleTree> result;
  for (const auto& [key, s] : layer) {
    std::vector<int> val(static_cast<std::size_t>(s.nv), 0);
    for (const auto& [u, v] : s.edges) {
      ++val[u];
      ++val[v];
    }
    bool ok = true;
    for (int v = 0; v < s.nv; ++v)
      if (val[v] != 1 && val[v] != 3) ok = false;
    if (!ok || val[0] != 1) continue;

    AdmissibleTree t;
    t.n_vertices = s.nv;
    t.edges = s.edges;
    std::sort(t.edges.begin(), t.edges.end());
    t.basepoint = 0;
    t.attach.assign(static_cast<std::size_t>(s.nv), 0);
    for (int v = 0; v < s.nv; ++v)
      if (val[v] == 1) t.attach[v] = 1;
    t = canonical_representative(t);
    result.emplace(canonical_form(t), std::move(t));
  }

  std::vector<AdmissibleTree> out;
  for (auto& [key, t] : result) out.push_back(std::move(t));
  return out;
}

// Maximal trees for the theta-decorated family: rank n = p + m, with m + 1
// leaves (all attaching, basepoint included), one valence-2 theta vertex,
// every other internal vertex trivalent.  m = 0 degenerates to a single
// vertex carrying the whole decoration.
inline std::vector<AdmissibleTree> enumerate_maximal_p_trees(int p, int n) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (n < p) throw std::invalid_argument("rank must be at least p");
  int m = n - p;

  if (m == 0) {
    AdmissibleTree t;
    t.n_vertices = 1;
    t.basepoint = 0;
    t.attach = {1};
    t.theta_vertex = 0;
    t.theta_edge_count = p;
    return {t};
  }

  int target = 2 * m + 1;
  struct Shape {
    int nv;
    std::vector<std::pair<int, int>> edges;
  };
  auto shape_key = [](const Shape& s) {
    AdmissibleTree t;
    t.n_vertices = s.nv;
    t.edges = s.edges;
    std::sort(t.edges.begin(), t.edges.end());
    t.basepoint = 0;
    t.attach.assign(static_cast<std::size_t>(s.nv), 1);
    return canonical_form(t);
  };

  std::map<std::string, Shape> layer;
  {
    Shape s0{1, {}};
    layer[shape_key(s0)] = s0;
  }
  for (int size = 1; size < target; ++size) {
    std::map<std::string, Shape> next;
    for (const auto& [key, s] : layer) {
      std::vector<int> val(static_cast<std::size_t>(s.nv), 0);
      for (const auto& [u, v] : s.edges) {
        ++val[u];
        ++val[v];
      }
      for (int v = 0; v < s.nv; ++v) {
        if (val[v] >= 3) continue;
        if (v == 0 && val[v] >= 1) continue;
        Shape grown{s.nv + 1, s.edges};
        grown.edges.emplace_back(v, s.nv);
        next.emplace(shape_key(grown), std::move(grown));
      }
    }
    layer = std::move(next);
  }

  std::map<std::string, AdmissibleTree> result;
  for (const auto& [key, s] : layer) {
    std::vector<int> val(static_cast<std::size_t>(s.nv), 0);
    for (const auto& [u, v] : s.edges) {
      ++val[u];
      ++val[v];
    }
    int theta = -1;
    bool ok = (val[0] == 1);
    for (int v = 0; v < s.nv && ok; ++v) {
      if (val[v] == 2) {
        if (theta >= 0) ok = false;  // exactly one valence-2 vertex
        theta = v;
      } else if (val[v] != 1 && val[v] != 3) {
        ok = false;
      }
    }
    if (!ok || theta < 0) continue;

    AdmissibleTree t;
    t.n_vertices = s.nv;
    t.edges = s.edges;
    std::sort(t.edges.begin(), t.edges.end());
    t.basepoint = 0;
    t.attach.assign(static_cast<std::size_t>(s.nv), 0);
    for (int v = 0; v < s.nv; ++v)
      if (val[v] == 1) t.attach[v] = 1;
    t.theta_vertex = theta;
    t.theta_edge_count = p;
    t = canonical_representative(t);
    result.emplace(canonical_form(t), std::move(t));
  }

  std::vector<AdmissibleTree> out;
  for (auto& [key, t] : result) out.push_back(std::move(t));
  return out;
}

}  // namespace palmod
