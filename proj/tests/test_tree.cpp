#include <catch2/catch_amalgamated.hpp>

#include <palmod/tree.hpp>

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"

using palmod::AdmissibleTree;
using palmod::Subforest;

namespace {

AdmissibleTree star_with_base() {
  // basepoint leaf 0, center 1, leaves 2 and 3
  AdmissibleTree t;
  t.n_vertices = 4;
  t.edges = {{0, 1}, {1, 2}, {1, 3}};
  t.basepoint = 0;
  t.attach = {1, 0, 1, 1};
  return t;
}

// the unique rank-3 maximal class: a 6-vertex caterpillar
AdmissibleTree caterpillar3() {
  auto ts = palmod::enumerate_maximal_trees(3);
  REQUIRE(ts.size() == 1);
  return ts[0];
}

std::uint32_t mask_of(const std::vector<int>& edges) {
  std::uint32_t m = 0;
  for (int e : edges) m |= 1u << e;
  return m;
}

}  // namespace

TEST_CASE("validation rejects malformed trees") {
  AdmissibleTree t = star_with_base();
  CHECK_NOTHROW(palmod::validate(t));

  auto bad = t;
  bad.basepoint = 9;
  CHECK_THROWS_AS(palmod::validate(bad), std::invalid_argument);

  bad = t;
  bad.attach = {0, 0, 0, 0};
  CHECK_THROWS_AS(palmod::validate(bad), std::invalid_argument);

  bad = t;
  bad.attach[0] = 0;  // basepoint must attach
  CHECK_THROWS_AS(palmod::validate(bad), std::invalid_argument);

  bad = t;
  bad.edges = {{0, 1}, {0, 1}, {2, 3}};  // cycle via repeat
  CHECK_THROWS_AS(palmod::validate(bad), std::invalid_argument);

  bad = t;
  bad.edges.pop_back();
  CHECK_THROWS_AS(palmod::validate(bad), std::invalid_argument);

  bad = t;
  bad.theta_vertex = 1;  // no edge count
  CHECK_THROWS_AS(palmod::validate(bad), std::invalid_argument);
}

TEST_CASE("canonical form identifies relabelings") {
  AdmissibleTree a = star_with_base();

  AdmissibleTree b;  // same shape, different labels: center 2, base 3
  b.n_vertices = 4;
  b.edges = {{0, 2}, {1, 2}, {2, 3}};
  b.basepoint = 3;
  b.attach = {1, 1, 0, 1};

  CHECK(palmod::canonical_form(a) == palmod::canonical_form(b));

  AdmissibleTree c = star_with_base();
  c.attach[1] = 1;  // extra decoration changes the class
  CHECK(palmod::canonical_form(a) != palmod::canonical_form(c));
}

TEST_CASE("encoding round trips") {
  for (int n = 2; n <= 4; ++n)
    for (const auto& t : palmod::enumerate_maximal_trees(n)) {
      auto enc = palmod::canonical_form(t);
      auto back = palmod::parse_encoding(enc);
      CHECK(palmod::canonical_form(back.tree) == enc);
      CHECK(back.tree.basepoint == 0);
      CHECK(std::all_of(back.edge_levels.begin(), back.edge_levels.end(), [](int l) { return l == 0; }));
    }

  for (int n = 3; n <= 6; ++n)
    for (const auto& t : palmod::enumerate_maximal_p_trees(3, n)) {
      auto enc = palmod::canonical_form(t);
      auto back = palmod::parse_encoding(enc, 3);
      CHECK(palmod::canonical_form(back.tree) == enc);
      CHECK(back.tree.theta_edge_count == 3);
    }

  auto single = palmod::parse_encoding("(a)");
  CHECK(single.tree.n_vertices == 1);
  CHECK(single.tree.attach == std::vector<char>{1});

  auto dot = palmod::parse_encoding("(ao)", 5);
  CHECK(dot.tree.theta_vertex == 0);
  CHECK(dot.tree.theta_edge_count == 5);

  CHECK_THROWS_AS(palmod::parse_encoding("(ao)"), std::invalid_argument);  // missing edge count
  CHECK_THROWS_AS(palmod::parse_encoding("(a"), std::invalid_argument);
  CHECK_THROWS_AS(palmod::parse_encoding("(a)x"), std::invalid_argument);
  CHECK_THROWS_AS(palmod::parse_encoding("(a[b:(a)])"), std::invalid_argument);
  CHECK_THROWS_AS(palmod::parse_encoding(""), std::invalid_argument);
}

TEST_CASE("maximal tree censuses") {
  const std::vector<std::size_t> expected{1, 1, 2, 3, 6};  // n = 2..6
  for (int n = 2; n <= 6; ++n) {
    auto ts = palmod::enumerate_maximal_trees(n);
    CHECK(ts.size() == expected[static_cast<std::size_t>(n - 2)]);
    CHECK(oracles::skeleton_sigma_census(n) == ts.size());

    std::set<std::string> names;
    for (const auto& t : ts) {
      CHECK_NOTHROW(palmod::validate(t));
      CHECK(t.n_vertices == 2 * n);
      CHECK(static_cast<int>(t.edges.size()) == 2 * n - 1);
      auto val = palmod::valences(t);
      int leaves = 0, tri = 0;
      for (int v = 0; v < t.n_vertices; ++v) {
        if (val[static_cast<std::size_t>(v)] == 1) ++leaves;
        if (val[static_cast<std::size_t>(v)] == 3) ++tri;
        CHECK(t.attach[static_cast<std::size_t>(v)] == (val[static_cast<std::size_t>(v)] == 1 ? 1 : 0));
      }
      CHECK(leaves == n + 1);
      CHECK(tri == n - 1);
      CHECK(val[static_cast<std::size_t>(t.basepoint)] == 1);
      CHECK(palmod::rank_of(t) == n);
      names.insert(palmod::canonical_form(t));
    }
    CHECK(names.size() == ts.size());  // classes are pairwise distinct
  }
  CHECK_THROWS_AS(palmod::enumerate_maximal_trees(1), std::invalid_argument);
}

TEST_CASE("labeled enumeration agrees with the census") {
  // every labeled {1,3} tree arises from a Pruefer sequence; the class
  // sets must coincide with the leaf-growth enumeration
  for (int n = 2; n <= 4; ++n) {
    auto labeled = oracles::labeled_sigma_trees(n);
    auto classes = oracles::canonical_census(labeled);
    std::set<std::string> fast;
    for (const auto& t : palmod::enumerate_maximal_trees(n)) fast.insert(palmod::canonical_form(t));
    CHECK(classes == fast);
  }
}

TEST_CASE("p-case censuses") {
  const std::vector<std::size_t> expected{1, 1, 2, 4};  // m = 0..3
  for (int m = 0; m <= 3; ++m) {
    int p = 3, n = p + m;
    auto ts = palmod::enumerate_maximal_p_trees(p, n);
    CHECK(ts.size() == expected[static_cast<std::size_t>(m)]);
    for (const auto& t : ts) {
      CHECK_NOTHROW(palmod::validate(t));
      CHECK(t.n_vertices == 2 * m + 1);
      CHECK(t.theta_vertex >= 0);
      CHECK(t.theta_edge_count == p);
      CHECK(palmod::rank_of(t) == n);
      auto val = palmod::valences(t);
      if (m == 0) {
        CHECK(t.theta_vertex == t.basepoint);
      } else {
        CHECK(val[static_cast<std::size_t>(t.theta_vertex)] == 2);
        CHECK(val[static_cast<std::size_t>(t.basepoint)] == 1);
        for (int v = 0; v < t.n_vertices; ++v)
          CHECK(t.attach[static_cast<std::size_t>(v)] == (val[static_cast<std::size_t>(v)] == 1 ? 1 : 0));
      }
    }
    if (m >= 1) {
      auto classes = oracles::canonical_census(oracles::labeled_p_trees(m, p));
      std::set<std::string> fast;
      for (const auto& t : ts) fast.insert(palmod::canonical_form(t));
      CHECK(classes == fast);
    }
  }
  // the tree shapes do not depend on p, only the decoration count does
  CHECK(palmod::enumerate_maximal_p_trees(5, 7).size() == 2);
  CHECK_THROWS_AS(palmod::enumerate_maximal_p_trees(4, 6), std::invalid_argument);
  CHECK_THROWS_AS(palmod::enumerate_maximal_p_trees(3, 2), std::invalid_argument);
}

TEST_CASE("subforest rule") {
  AdmissibleTree t = star_with_base();
  // single edges: each component holds one attaching leaf
  CHECK(palmod::is_subforest(t, Subforest{mask_of({0})}));
  CHECK(palmod::is_subforest(t, Subforest{mask_of({1})}));
  // two leaf edges meet at the center: two attaching vertices join up
  CHECK_FALSE(palmod::is_subforest(t, Subforest{mask_of({1, 2})}));
  CHECK_FALSE(palmod::is_subforest(t, Subforest{mask_of({0, 1})}));
  // the empty set always qualifies
  CHECK(palmod::is_subforest(t, Subforest{0}));

  auto sf = palmod::subforests(t);
  CHECK(sf.size() == 4);  // empty + three single edges

  // subsets of subforests are subforests; cross-check against the oracle
  auto tt = caterpillar3();
  for (const auto& big : palmod::subforests(tt)) {
    for (int e = 0; e < static_cast<int>(tt.edges.size()); ++e) {
      if (!big.contains(e)) continue;
      Subforest smaller{big.edge_mask & ~(1u << e)};
      CHECK(palmod::is_subforest(tt, smaller));
    }
    CHECK(oracles::brute_is_subforest(tt, oracles::mask_to_edges(static_cast<int>(big.edge_mask),
                                                                 static_cast<int>(tt.edges.size()))));
  }
}

TEST_CASE("collapse merges decorations and reindexes edges") {
  AdmissibleTree t = star_with_base();
  // collapse edge 1 = (1,2): center absorbs leaf 2 and its attach flag
  auto res = palmod::collapse_with_map(t, Subforest{mask_of({1})});
  CHECK(res.tree.n_vertices == 3);
  CHECK(res.tree.basepoint == 0);
  CHECK(res.tree.attach == std::vector<char>{1, 1, 1});
  CHECK(res.tree.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(res.edge_map == std::vector<int>{0, -1, 1});
  CHECK(palmod::rank_of(res.tree) == palmod::rank_of(t));

  CHECK_THROWS_AS(palmod::collapse(t, Subforest{mask_of({1, 2})}), std::invalid_argument);

  // collapsing in stages matches collapsing at once
  auto tt = caterpillar3();
  auto all = palmod::subforests(tt);
  for (const auto& s : all) {
    if (s.size() < 2) continue;
    int first = -1;
    for (int e = 0; e < static_cast<int>(tt.edges.size()); ++e)
      if (s.contains(e)) {
        first = e;
        break;
      }
    auto stage1 = palmod::collapse_with_map(tt, Subforest{1u << first});
    std::uint32_t rest = 0;
    for (int e = 0; e < static_cast<int>(tt.edges.size()); ++e)
      if (s.contains(e) && e != first) {
        REQUIRE(stage1.edge_map[static_cast<std::size_t>(e)] >= 0);
        rest |= 1u << stage1.edge_map[static_cast<std::size_t>(e)];
      }
    auto twice = palmod::collapse(stage1.tree, Subforest{rest});
    auto once = palmod::collapse(tt, s);
    CHECK(palmod::canonical_form(twice) == palmod::canonical_form(once));
    // and the oracle's collapse lands in the same class
    auto brute = oracles::brute_collapse(tt, oracles::mask_to_edges(static_cast<int>(s.edge_mask),
                                                                    static_cast<int>(tt.edges.size())));
    CHECK(palmod::canonical_form(brute) == palmod::canonical_form(once));
  }
}

TEST_CASE("automorphism groups") {
  AdmissibleTree t = star_with_base();
  auto auts = palmod::automorphisms(t);
  CHECK(auts.size() == 2);  // identity and the swap of leaves 2, 3

  // cross-check group orders against raw permutation search, and confirm
  // every order is a power of two
  auto is_pow2 = [](std::size_t k) { return k > 0 && (k & (k - 1)) == 0; };
  for (int n = 2; n <= 4; ++n)
    for (const auto& tree : palmod::enumerate_maximal_trees(n)) {
      auto fast = palmod::automorphisms(tree);
      auto brute = oracles::brute_automorphisms(tree);
      CHECK(fast.size() == brute.size());
      CHECK(is_pow2(fast.size()));
      std::set<std::vector<int>> seen;
      for (const auto& a : fast) {
        CHECK(oracles::permutation_matches(tree, tree, a.vertex_map));
        seen.insert(a.vertex_map);
      }
      CHECK(seen.size() == fast.size());
    }
  for (int m = 1; m <= 3; ++m)
    for (const auto& tree : palmod::enumerate_maximal_p_trees(3, 3 + m)) {
      auto fast = palmod::automorphisms(tree);
      CHECK(fast.size() == oracles::brute_automorphisms(tree).size());
      CHECK(is_pow2(fast.size()));
    }
}

TEST_CASE("edge permutations and stabilizers") {
  auto t = caterpillar3();
  auto val = palmod::valences(t);
  auto adj = std::vector<std::set<int>>(static_cast<std::size_t>(t.n_vertices));
  for (const auto& [u, v] : t.edges) {
    adj[static_cast<std::size_t>(u)].insert(v);
    adj[static_cast<std::size_t>(v)].insert(u);
  }
  int far = -1;
  for (int v = 0; v < t.n_vertices; ++v)
    if (val[static_cast<std::size_t>(v)] == 3 && !adj[static_cast<std::size_t>(v)].count(t.basepoint)) far = v;
  REQUIRE(far >= 0);

  std::vector<int> far_leaf_edges;
  for (int e = 0; e < static_cast<int>(t.edges.size()); ++e) {
    auto [u, v] = t.edges[static_cast<std::size_t>(e)];
    int other = (u == far) ? v : (v == far) ? u : -1;
    if (other >= 0 && val[static_cast<std::size_t>(other)] == 1) far_leaf_edges.push_back(e);
  }
  REQUIRE(far_leaf_edges.size() == 2);

  // the two leaf edges at the far trivalent vertex: NOT a subforest, but
  // the swap stabilizing them acts as an odd permutation
  Subforest pair{mask_of(far_leaf_edges)};
  CHECK_FALSE(palmod::is_subforest(t, pair));
  auto stab = palmod::forest_stabilizer(t, pair);
  CHECK(stab.size() == 2);
  CHECK(palmod::has_odd_edge_permutation(t, pair));

  // one leaf edge per trivalent vertex is a genuine subforest with an
  // even (trivial) stabilizer action
  int near = -1;
  for (int v = 0; v < t.n_vertices; ++v)
    if (val[static_cast<std::size_t>(v)] == 3 && v != far) near = v;
  int near_leaf_edge = -1;
  for (int e = 0; e < static_cast<int>(t.edges.size()); ++e) {
    auto [u, v] = t.edges[static_cast<std::size_t>(e)];
    int other = (u == near) ? v : (v == near) ? u : -1;
    if (other >= 0 && other != t.basepoint && val[static_cast<std::size_t>(other)] == 1) near_leaf_edge = e;
  }
  REQUIRE(near_leaf_edge >= 0);
  Subforest split{mask_of({near_leaf_edge, far_leaf_edges[0]})};
  CHECK(palmod::is_subforest(t, split));
  CHECK_FALSE(palmod::has_odd_edge_permutation(t, split));

  // edge permutations are bijections
  for (const auto& a : palmod::automorphisms(t)) {
    auto ep = palmod::edge_permutation(t, a);
    std::set<int> image(ep.begin(), ep.end());
    CHECK(image.size() == t.edges.size());
  }
}

TEST_CASE("doubled graphs") {
  auto check_double = [](const AdmissibleTree& t) {
    auto g = palmod::double_graph(t);
    CHECK(g.component_count() == 1);
    CHECK(g.betti() == palmod::rank_of(t));
    for (int v = 0; v < g.n_vertices; ++v)
      CHECK(g.involution[static_cast<std::size_t>(g.involution[static_cast<std::size_t>(v)])] == v);
    for (int v = 0; v < t.n_vertices; ++v)
      if (t.attach[static_cast<std::size_t>(v)]) CHECK(g.involution[static_cast<std::size_t>(v)] == v);
    if (t.theta_vertex >= 0) {
      int moved = 0;
      for (int v = 0; v < g.n_vertices; ++v) {
        if (g.rotation[static_cast<std::size_t>(v)] == v) continue;
        ++moved;
        // the rotation cycles the petal midpoints with period p
        int w = v;
        for (int k = 0; k < t.theta_edge_count; ++k) w = g.rotation[static_cast<std::size_t>(w)];
        CHECK(w == v);
        CHECK(g.involution[static_cast<std::size_t>(v)] == v);
      }
      CHECK(moved == t.theta_edge_count);
    } else {
      for (int v = 0; v < g.n_vertices; ++v) CHECK(g.rotation[static_cast<std::size_t>(v)] == v);
    }
  };

  for (int n = 2; n <= 5; ++n)
    for (const auto& t : palmod::enumerate_maximal_trees(n)) {
      check_double(t);
      // rank is preserved under collapse, and so is the doubled betti
      for (const auto& s : palmod::subforests(t))
        check_double(palmod::collapse(t, s));
    }
  for (int m = 0; m <= 3; ++m)
    for (const auto& t : palmod::enumerate_maximal_p_trees(3, 3 + m)) {
      check_double(t);
      for (const auto& s : palmod::subforests(t)) check_double(palmod::collapse(t, s));
    }
}
