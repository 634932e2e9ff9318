#pragma once

// Brute-force reference implementations used by the tests to cross-check
// the fast library paths.  Everything here favors obviousness over speed:
// labeled enumeration through Pruefer sequences, isomorphism by exhaustive
// permutation search, collapse and subforest logic rewritten from scratch,
// and Smith invariants through gcds of k x k minors.

#include <palmod/complex.hpp>
#include <palmod/matrix.hpp>
#include <palmod/tree.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracles {

// ---------------------------------------------------------------------
// Labeled trees from Pruefer sequences

// Classic O(V^2) decode; vertex degrees are 1 + multiplicity in seq.
inline std::vector<std::pair<int, int>> tree_from_pruefer(const std::vector<int>& seq, int n_vertices) {
  std::vector<int> deg(static_cast<std::size_t>(n_vertices), 1);
  for (int v : seq) ++deg[static_cast<std::size_t>(v)];
  std::vector<std::pair<int, int>> edges;
  for (int v : seq) {
    for (int leaf = 0; leaf < n_vertices; ++leaf) {
      if (deg[static_cast<std::size_t>(leaf)] == 1) {
        edges.push_back(std::minmax(leaf, v));
        deg[static_cast<std::size_t>(leaf)] = 0;
        --deg[static_cast<std::size_t>(v)];
        break;
      }
    }
  }
  std::vector<int> rest;
  for (int v = 0; v < n_vertices; ++v)
    if (deg[static_cast<std::size_t>(v)] == 1) rest.push_back(v);
  edges.push_back(std::minmax(rest[0], rest[1]));
  std::sort(edges.begin(), edges.end());
  return edges;
}

template <typename Fn>
inline void for_each_combination(int n, int k, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  if (k == 0) {
    fn(idx);
    return;
  }
  if (k > n) return;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

inline palmod::AdmissibleTree decorate_leaves(int n_vertices, std::vector<std::pair<int, int>> edges) {
  palmod::AdmissibleTree t;
  t.n_vertices = n_vertices;
  t.edges = std::move(edges);
  std::sort(t.edges.begin(), t.edges.end());
  t.basepoint = 0;
  t.attach.assign(static_cast<std::size_t>(n_vertices), 0);
  auto val = palmod::valences(t);
  for (int v = 0; v < n_vertices; ++v)
    if (val[static_cast<std::size_t>(v)] == 1) t.attach[static_cast<std::size_t>(v)] = 1;
  return t;
}

// Every labeled {1,3}-valence tree on 2n vertices whose vertex 0 is a leaf:
// the n-1 trivalent labels appear exactly twice in the Pruefer sequence,
// leaves never.
inline std::vector<palmod::AdmissibleTree> labeled_sigma_trees(int n) {
  int V = 2 * n;
  std::vector<palmod::AdmissibleTree> out;
  for_each_combination(V - 1, n - 1, [&](const std::vector<int>& idx) {
    std::vector<int> seq;
    for (int i : idx) {
      seq.push_back(i + 1);
      seq.push_back(i + 1);
    }
    std::sort(seq.begin(), seq.end());
    do {
      out.push_back(decorate_leaves(V, tree_from_pruefer(seq, V)));
    } while (std::next_permutation(seq.begin(), seq.end()));
  });
  return out;
}

// Labeled theta-decorated trees for m = n - p >= 1: 2m+1 vertices, one
// valence-2 theta vertex (once in the sequence), m-1 trivalent vertices
// (twice each), vertex 0 a leaf.
inline std::vector<palmod::AdmissibleTree> labeled_p_trees(int m, int p) {
  int V = 2 * m + 1;
  std::vector<palmod::AdmissibleTree> out;
  for (int theta = 1; theta < V; ++theta) {
    std::vector<int> avail;
    for (int v = 1; v < V; ++v)
      if (v != theta) avail.push_back(v);
    for_each_combination(static_cast<int>(avail.size()), m - 1, [&](const std::vector<int>& idx) {
      std::vector<int> seq{theta};
      for (int i : idx) {
        seq.push_back(avail[static_cast<std::size_t>(i)]);
        seq.push_back(avail[static_cast<std::size_t>(i)]);
      }
      std::sort(seq.begin(), seq.end());
      do {
        palmod::AdmissibleTree t = decorate_leaves(V, tree_from_pruefer(seq, V));
        t.theta_vertex = theta;
        t.theta_edge_count = p;
        out.push_back(std::move(t));
      } while (std::next_permutation(seq.begin(), seq.end()));
    });
  }
  return out;
}

inline std::set<std::string> canonical_census(const std::vector<palmod::AdmissibleTree>& trees) {
  std::set<std::string> out;
  for (const auto& t : trees) out.insert(palmod::canonical_form(t));
  return out;
}

// Independent class count for the {1,3} family: the trivalent vertices of
// such a tree always span a subtree (remove the leaves), every skeleton
// vertex carries 3 - skeleton-degree leaves, and the class is fixed by the
// skeleton shape plus the basepoint leaf's parent.
inline std::size_t skeleton_sigma_census(int n) {
  int k = n - 1;
  std::set<std::string> classes;
  auto handle = [&](const std::vector<std::pair<int, int>>& skel) {
    std::vector<int> deg(static_cast<std::size_t>(k), 0);
    for (const auto& [u, v] : skel) {
      ++deg[static_cast<std::size_t>(u)];
      ++deg[static_cast<std::size_t>(v)];
    }
    for (int d : deg)
      if (d > 3) return;
    for (int parent = 0; parent < k; ++parent) {
      if (deg[static_cast<std::size_t>(parent)] == 3) continue;
      std::vector<std::pair<int, int>> edges = skel;
      int next = k;
      int base = -1;
      for (int v = 0; v < k; ++v) {
        for (int s = deg[static_cast<std::size_t>(v)]; s < 3; ++s) {
          edges.emplace_back(v, next);
          if (v == parent && base < 0) base = next;
          ++next;
        }
      }
      palmod::AdmissibleTree t = decorate_leaves(2 * n, std::move(edges));
      t.basepoint = base;
      classes.insert(palmod::canonical_form(t));
    }
  };
  if (k == 1) {
    handle({});
  } else if (k == 2) {
    handle({{0, 1}});
  } else {
    std::vector<int> seq(static_cast<std::size_t>(k - 2), 0);
    while (true) {
      handle(tree_from_pruefer(seq, k));
      int i = k - 3;
      while (i >= 0 && seq[static_cast<std::size_t>(i)] == k - 1) --i;
      if (i < 0) break;
      ++seq[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k - 2; ++j) seq[static_cast<std::size_t>(j)] = 0;
    }
  }
  return classes.size();
}

// ---------------------------------------------------------------------
// Smith invariants through determinant divisors

inline palmod::Int minor_det(const palmod::IntegerMatrix& m, const std::vector<int>& rows,
                             const std::vector<int>& cols) {
  if (rows.size() == 1) return m.at(rows[0], cols[0]);
  palmod::Int acc = 0;
  std::vector<int> sub(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const palmod::Int& v = m.at(rows[0], cols[j]);
    if (v == 0) continue;
    std::vector<int> rest;
    for (std::size_t jj = 0; jj < cols.size(); ++jj)
      if (jj != j) rest.push_back(cols[jj]);
    palmod::Int term = v * minor_det(m, sub, rest);
    acc += (j % 2) ? -term : term;
  }
  return acc;
}

// d_k = gcd of all k x k minors; the k-th invariant factor is d_k / d_{k-1}.
inline std::vector<palmod::Int> minor_gcd_invariants(const palmod::IntegerMatrix& m) {
  using boost::multiprecision::abs;
  using boost::multiprecision::gcd;
  std::vector<palmod::Int> divisors;
  int maxk = std::min(m.rows(), m.cols());
  for (int k = 1; k <= maxk; ++k) {
    palmod::Int g = 0;
    for_each_combination(m.rows(), k, [&](const std::vector<int>& rows) {
      for_each_combination(m.cols(), k, [&](const std::vector<int>& cols) {
        g = gcd(g, abs(minor_det(m, rows, cols)));
      });
    });
    if (g == 0) break;
    divisors.push_back(g);
  }
  std::vector<palmod::Int> inv;
  palmod::Int prev = 1;
  for (const palmod::Int& d : divisors) {
    inv.push_back(d / prev);
    prev = d;
  }
  return inv;
}

// ---------------------------------------------------------------------
// Canonicalization-free quotient complex

inline bool permutation_matches(const palmod::AdmissibleTree& a, const palmod::AdmissibleTree& b,
                                const std::vector<int>& perm) {
  if (perm[static_cast<std::size_t>(a.basepoint)] != b.basepoint) return false;
  for (int v = 0; v < a.n_vertices; ++v)
    if (a.attach[static_cast<std::size_t>(v)] != b.attach[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])])
      return false;
  if ((a.theta_vertex >= 0) != (b.theta_vertex >= 0)) return false;
  if (a.theta_vertex >= 0 && perm[static_cast<std::size_t>(a.theta_vertex)] != b.theta_vertex) return false;
  std::set<std::pair<int, int>> be(b.edges.begin(), b.edges.end());
  for (const auto& [u, v] : a.edges)
    if (!be.count(std::minmax(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]))) return false;
  return true;
}

inline bool brute_isomorphic(const palmod::AdmissibleTree& a, const palmod::AdmissibleTree& b) {
  if (a.n_vertices != b.n_vertices || a.edges.size() != b.edges.size()) return false;
  if (a.theta_edge_count != b.theta_edge_count) return false;
  std::vector<int> perm(static_cast<std::size_t>(a.n_vertices));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (permutation_matches(a, b, perm)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline std::vector<std::vector<int>> brute_automorphisms(const palmod::AdmissibleTree& t) {
  std::vector<std::vector<int>> out;
  std::vector<int> perm(static_cast<std::size_t>(t.n_vertices));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (permutation_matches(t, t, perm)) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Component label per vertex under a chosen edge subset (indices into
// t.edges), by plain label propagation.
inline std::vector<int> brute_components(const palmod::AdmissibleTree& t, const std::vector<int>& chosen) {
  std::vector<int> comp(static_cast<std::size_t>(t.n_vertices));
  std::iota(comp.begin(), comp.end(), 0);
  bool merged = true;
  while (merged) {
    merged = false;
    for (int e : chosen) {
      auto [u, v] = t.edges[static_cast<std::size_t>(e)];
      int cu = comp[static_cast<std::size_t>(u)], cv = comp[static_cast<std::size_t>(v)];
      if (cu == cv) continue;
      int lo = std::min(cu, cv), hi = std::max(cu, cv);
      for (int& c : comp)
        if (c == hi) c = lo;
      merged = true;
    }
  }
  return comp;
}

inline bool brute_is_subforest(const palmod::AdmissibleTree& t, const std::vector<int>& chosen) {
  auto comp = brute_components(t, chosen);
  std::map<int, int> attach_per;
  for (int v = 0; v < t.n_vertices; ++v)
    if (t.attach[static_cast<std::size_t>(v)] && ++attach_per[comp[static_cast<std::size_t>(v)]] > 1) return false;
  return true;
}

inline palmod::AdmissibleTree brute_collapse(const palmod::AdmissibleTree& t, const std::vector<int>& chosen) {
  auto comp = brute_components(t, chosen);
  std::map<int, int> id;
  for (int v = 0; v < t.n_vertices; ++v)
    if (!id.count(comp[static_cast<std::size_t>(v)])) {
      int k = static_cast<int>(id.size());
      id[comp[static_cast<std::size_t>(v)]] = k;
    }
  palmod::AdmissibleTree out;
  out.n_vertices = static_cast<int>(id.size());
  out.attach.assign(static_cast<std::size_t>(out.n_vertices), 0);
  for (int v = 0; v < t.n_vertices; ++v)
    if (t.attach[static_cast<std::size_t>(v)]) out.attach[static_cast<std::size_t>(id[comp[static_cast<std::size_t>(v)]])] = 1;
  out.basepoint = id[comp[static_cast<std::size_t>(t.basepoint)]];
  out.theta_vertex = (t.theta_vertex >= 0) ? id[comp[static_cast<std::size_t>(t.theta_vertex)]] : -1;
  out.theta_edge_count = t.theta_edge_count;
  std::set<int> drop(chosen.begin(), chosen.end());
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    if (drop.count(static_cast<int>(e))) continue;
    auto [u, v] = t.edges[e];
    out.edges.push_back(std::minmax(id[comp[static_cast<std::size_t>(u)]], id[comp[static_cast<std::size_t>(v)]]));
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

inline std::vector<int> mask_to_edges(int mask, int n_edges) {
  std::vector<int> out;
  for (int e = 0; e < n_edges; ++e)
    if ((mask >> e) & 1) out.push_back(e);
  return out;
}

// f-vector of the quotient complex, rebuilt from first principles: close
// the labeled maximal trees under collapse modulo permutation isomorphism,
// then count flags of nested subforests per class modulo the class
// representative's automorphisms.
inline std::vector<std::size_t> brute_f_vector(const palmod::FamilySpec& spec) {
  using palmod::AdmissibleTree;
  std::vector<AdmissibleTree> seeds;
  if (spec.family == palmod::Family::Sigma) {
    if (spec.n == 1) {
      AdmissibleTree t;
      t.n_vertices = 2;
      t.edges = {{0, 1}};
      t.basepoint = 0;
      t.attach = {1, 1};
      seeds.push_back(std::move(t));
    } else {
      seeds = labeled_sigma_trees(spec.n);
    }
  } else {
    int m = spec.n - spec.p;
    if (m == 0) {
      AdmissibleTree t;
      t.n_vertices = 1;
      t.basepoint = 0;
      t.attach = {1};
      t.theta_vertex = 0;
      t.theta_edge_count = spec.p;
      seeds.push_back(std::move(t));
    } else {
      seeds = labeled_p_trees(m, spec.p);
    }
  }

  std::vector<AdmissibleTree> reps;
  auto add = [&](const AdmissibleTree& t) {
    for (const auto& r : reps)
      if (brute_isomorphic(r, t)) return false;
    reps.push_back(t);
    return true;
  };
  std::vector<AdmissibleTree> queue;
  for (const auto& s : seeds)
    if (add(s)) queue.push_back(s);
  while (!queue.empty()) {
    AdmissibleTree t = queue.back();
    queue.pop_back();
    int ne = static_cast<int>(t.edges.size());
    for (int mask = 1; mask < (1 << ne); ++mask) {
      auto chosen = mask_to_edges(mask, ne);
      if (!brute_is_subforest(t, chosen)) continue;
      AdmissibleTree c = brute_collapse(t, chosen);
      if (add(c)) queue.push_back(c);
    }
  }

  std::vector<std::size_t> f{reps.size()};
  for (const auto& T : reps) {
    int ne = static_cast<int>(T.edges.size());
    std::vector<int> sfs;
    for (int mask = 1; mask < (1 << ne); ++mask)
      if (brute_is_subforest(T, mask_to_edges(mask, ne))) sfs.push_back(mask);

    std::map<std::pair<int, int>, int> eidx;
    for (std::size_t e = 0; e < T.edges.size(); ++e) eidx[T.edges[e]] = static_cast<int>(e);
    std::vector<std::vector<int>> eperms;
    for (const auto& perm : brute_automorphisms(T)) {
      std::vector<int> ep(static_cast<std::size_t>(ne));
      for (int e = 0; e < ne; ++e) {
        auto [u, v] = T.edges[static_cast<std::size_t>(e)];
        ep[static_cast<std::size_t>(e)] =
            eidx.at(std::minmax(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]));
      }
      eperms.push_back(std::move(ep));
    }
    auto apply_mask = [&](int mask, const std::vector<int>& ep) {
      int out = 0;
      for (int e = 0; e < ne; ++e)
        if ((mask >> e) & 1) out |= 1 << ep[static_cast<std::size_t>(e)];
      return out;
    };

    std::vector<std::vector<int>> cur;
    for (int m1 : sfs) cur.push_back({m1});
    std::size_t r = 1;
    while (!cur.empty()) {
      std::set<std::vector<int>> orbit_keys;
      for (const auto& chain : cur) {
        std::vector<int> best;
        for (const auto& ep : eperms) {
          std::vector<int> img;
          for (int m : chain) img.push_back(apply_mask(m, ep));
          if (best.empty() || img < best) best = std::move(img);
        }
        orbit_keys.insert(best);
      }
      if (f.size() <= r) f.resize(r + 1, 0);
      f[r] += orbit_keys.size();

      std::vector<std::vector<int>> nxt;
      for (const auto& chain : cur)
        for (int m2 : sfs)
          if (m2 != chain.back() && (chain.back() & m2) == chain.back()) {
            auto grown = chain;
            grown.push_back(m2);
            nxt.push_back(std::move(grown));
          }
      cur = std::move(nxt);
      ++r;
    }
  }
  return f;
}

}  // namespace oracles
