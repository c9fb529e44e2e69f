#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "fixtures.hpp"

using namespace kurosh;
using namespace fixtures;

namespace {

// Finite permutation action of G*H on {0..n-1} (right action); the oracle
// subgroup is the stabilizer of point 0.
struct PermAction {
  FreeProduct group;
  std::vector<std::size_t> a, b;

  std::size_t act(std::size_t p, const Syllable& s) const {
    const auto& perm = s.side == Side::left ? a : b;
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
    const Integer& k = s.elem;
    bool neg = k < 0;
    for (Integer i = 0; i < abs(k); ++i) p = neg ? inv[p] : perm[p];
    return p;
  }
  std::size_t act(std::size_t p, const Word& w) const {
    for (const auto& s : w.syllables()) p = act(p, s);
    return p;
  }
  bool fixes_zero(const Word& w) const { return act(0, w) == 0; }

  // Schreier generators of the stabilizer of 0 and the orbit size.
  std::pair<std::vector<Word>, std::size_t> schreier() const {
    std::map<std::size_t, Word> rep{{0, group.identity()}};
    std::vector<std::size_t> order{0};
    auto gens = group.generators();
    for (std::size_t i = 0; i < order.size(); ++i)
      for (const auto& g : gens) {
        std::size_t q = act(order[i], g);
        if (!rep.count(q)) {
          rep[q] = group.multiply(rep[order[i]], g);
          order.push_back(q);
        }
      }
    std::vector<Word> out;
    for (auto p : order)
      for (const auto& g : gens) {
        Word w = group.multiply({rep[p], g, group.invert(rep[act(p, g)])});
        if (!w.is_identity()) out.push_back(w);
      }
    return {out, order.size()};
  }
};

std::vector<std::size_t> random_perm(Lcg& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
  return p;
}

std::size_t count_type(const QuotientGraph& g, VertexType t, bool core_only = true) {
  std::size_t n = 0;
  for (const auto& v : g.vertices())
    if (v.type == t && (!core_only || v.core)) ++n;
  return n;
}

bool parity_oracle(const Word& w) {
  Integer s = 0;
  for (const auto& y : w.syllables())
    if (y.side == Side::left) s += y.elem;
  return Integer(s % 2).is_zero();
}

}  // namespace

TEST(BassSerre, LeftFactorSubgroup) {
  auto g = free_group();
  auto c = subgroup(g, {"a"});
  EXPECT_EQ(kurosh_rank(*c), (KuroshReport{1, 0, 1}));
  auto core = fundamental_core(*c);
  ASSERT_EQ(core.vertices.size(), 2u);
  ASSERT_EQ(core.edges.size(), 1u);
  EXPECT_EQ(c->vertices()[core.vertices[1]].type, VertexType::g_type);
  EXPECT_EQ(c->vertices()[core.vertices[1]].stab, FactorSubgroup::cyclic(1));
}

TEST(BassSerre, TrivialSubgroupCoreIsBase) {
  auto g = free_group();
  auto c = trivial_subgroup(g);
  auto core = fundamental_core(*c);
  EXPECT_EQ(core.vertices, std::vector<std::size_t>{c->base()});
  EXPECT_TRUE(core.edges.empty());
  EXPECT_EQ(kurosh_rank(*c), (KuroshReport{0, 0, 0}));
  EXPECT_TRUE(membership(*c, g.identity()));
  EXPECT_FALSE(membership(*c, g.parse("a b")));
}

TEST(BassSerre, IndexTwoSubgroupOfFreeGroup) {
  auto g = free_group();
  auto c = subgroup(g, {"a^2", "b", "a b a^-1"});
  EXPECT_EQ(kurosh_rank(*c), (KuroshReport{3, 0, 3}));
  EXPECT_EQ(fundamental_core(*c).vertices.size(), 5u);
  EXPECT_EQ(c->vertices().size(), 5u);
  EXPECT_EQ(count_type(*c, VertexType::zero), 2u);
  EXPECT_EQ(count_type(*c, VertexType::g_type), 1u);
  EXPECT_EQ(count_type(*c, VertexType::h_type), 2u);
  EXPECT_TRUE(spanning_data(*c).transversal.empty());
  EXPECT_FALSE(membership(*c, g.parse("a")));
  EXPECT_TRUE(membership(*c, g.parse("a^2 b^2")));
  for (const auto& w : g.ball(6)) ASSERT_EQ(membership(*c, w), parity_oracle(w)) << g.format(w);
}

TEST(BassSerre, CyclicSubgroupOfModularGroup) {
  auto g = z2_z3();
  auto c = subgroup(g, {"a b"});
  EXPECT_EQ(kurosh_rank(*c), (KuroshReport{0, 1, 1}));
  for (const auto& v : c->vertices()) EXPECT_TRUE(v.stab.is_trivial());
  EXPECT_EQ(spanning_data(*c).transversal.size(), 1u);
  std::set<Word> listed;
  Word ab = g.parse("a b"), p = g.identity(), q = g.identity();
  for (int k = 0; k <= 12; ++k) {
    listed.insert(p);
    listed.insert(q);
    p = g.multiply(p, ab);
    q = g.multiply(q, g.invert(ab));
  }
  EXPECT_TRUE(membership(*c, g.parse("a b a b a b")));
  EXPECT_FALSE(membership(*c, g.parse("b a")));
  for (const auto& w : g.ball(6)) ASSERT_EQ(membership(*c, w), listed.count(w) > 0) << g.format(w);
}

TEST(BassSerre, NielsenReducedListingOracle) {
  auto g = free_group();
  auto gens = words(g, {"a^2", "b a b^-1"});
  auto c = build_core_graph(g, gens);
  std::set<Word> listed{g.identity()};
  std::vector<Word> frontier{g.identity()};
  std::vector<Word> sym;
  for (const auto& x : gens) {
    sym.push_back(x);
    sym.push_back(g.invert(x));
  }
  for (int k = 0; k < 6; ++k) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (const auto& x : sym) {
        Word p = g.multiply(w, x);
        if (listed.insert(p).second) next.push_back(p);
      }
    frontier = next;
  }
  for (const auto& w : g.ball(6)) ASSERT_EQ(membership(*c, w), listed.count(w) > 0) << g.format(w);
  EXPECT_EQ(kurosh_rank(*c).total, 2u);
}

TEST(BassSerre, FiniteIndexAgainstPermutationOracle) {
  Lcg rng(2024);
  auto g = free_group();
  auto ball = g.ball(6);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t n = 2 + rng.below(4);
    PermAction act{g, random_perm(rng, n), random_perm(rng, n)};
    auto [gens, index] = act.schreier();
    auto c = build_core_graph(g, gens);
    for (const auto& w : ball) ASSERT_EQ(membership(*c, w), act.fixes_zero(w)) << g.format(w);
    EXPECT_EQ(kurosh_rank(*c).total, index + 1);
    EXPECT_EQ(count_type(*c, VertexType::zero), index);
  }
}

TEST(BassSerre, FiniteFactorsAgainstPermutationOracle) {
  auto g = FreeProduct(FactorGroup::cyclic("G", 2, "a"), FactorGroup::cyclic("H", 3, "b"));
  // a -> (0 1)(2 3), b -> (1 2 3) on four points.
  PermAction act{g, {1, 0, 3, 2}, {0, 2, 3, 1}};
  auto [gens, index] = act.schreier();
  auto c = build_core_graph(g, gens);
  for (const auto& w : g.ball(7)) ASSERT_EQ(membership(*c, w), act.fixes_zero(w)) << g.format(w);
  EXPECT_EQ(count_type(*c, VertexType::zero), index);
}

TEST(BassSerre, StabilizersMatchConjugateMembership) {
  auto g = free_group();
  Lcg rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Word> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(random_word(g, rng, 1 + rng.below(4)));
    auto c = build_core_graph(g, gens);
    for (auto v : fundamental_core(*c).vertices) {
      const auto& vert = c->vertices()[v];
      if (vert.type == VertexType::zero) continue;
      Side s = side_of(vert.type);
      const Word& r = c->vertex_word(v);
      for (int k = -6; k <= 6; ++k) {
        Word x = g.conjugate(r, g.letter(s, Integer(k)));
        EXPECT_EQ(vert.stab.contains(Integer(k)), membership(*c, x));
      }
    }
  }
}

TEST(BassSerre, StabilizersInFiniteFactor) {
  auto g = FreeProduct(s3("s", "t"), FactorGroup::integer("H", "b"));
  auto c = subgroup(g, {"s", "b t b^-1", "b^2"});
  for (auto v : fundamental_core(*c).vertices) {
    const auto& vert = c->vertices()[v];
    if (vert.type != VertexType::g_type) continue;
    const Word& r = c->vertex_word(v);
    for (std::size_t x = 0; x < 6; ++x)
      EXPECT_EQ(vert.stab.contains(Integer(x)), membership(*c, g.conjugate(r, g.letter(Side::left, Integer(x)))));
  }
  EXPECT_TRUE(membership(*c, g.parse("b^2 s b^-2")) == membership(*c, g.parse("s")));
}

TEST(BassSerre, CoreLeavesAreBaseOrStabilized) {
  auto g = free_group();
  Lcg rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Word> gens;
    for (int i = 0; i < 2; ++i) gens.push_back(random_word(g, rng, 1 + rng.below(5)));
    auto c = build_core_graph(g, gens);
    auto core = fundamental_core(*c);
    std::map<std::size_t, std::size_t> degree;
    for (auto e : core.edges) {
      ++degree[c->edges()[e].side_vertex];
      ++degree[c->edges()[e].zero_vertex];
    }
    for (auto v : core.vertices)
      if (v != c->base() && degree[v] <= 1) EXPECT_FALSE(c->vertices()[v].stab.is_trivial());
    EXPECT_EQ(spanning_data(*c).bfs_order.size(), core.vertices.size());
    EXPECT_EQ(spanning_data(*c).transversal.size(), kurosh_rank(*c).graph_rank);
    EXPECT_EQ(spanning_data(*c).tree_edges.size() + 1, core.vertices.size());
  }
}

TEST(BassSerre, LiftsAreConsistent) {
  auto g = free_group();
  Lcg rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Word> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(random_word(g, rng, 1 + rng.below(4)));
    auto c = build_core_graph(g, gens);
    const auto& sp = spanning_data(*c);
    for (auto v : sp.bfs_order) {
      if (c->vertices()[v].type != VertexType::zero) continue;
      auto end = c->read(c->vertex_word(v));
      ASSERT_TRUE(end);
      EXPECT_EQ(*end, v);
    }
    for (auto e : sp.tree_edges) {
      const auto& edge = c->edges()[e];
      EXPECT_EQ(c->edge_word(e), c->vertex_word(edge.zero_vertex));
    }
    for (auto e : sp.transversal) {
      const auto& edge = c->edges()[e];
      Word zeta = g.multiply(c->vertex_word(edge.zero_vertex), g.invert(c->edge_word(e)));
      EXPECT_TRUE(membership(*c, zeta));
      EXPECT_FALSE(zeta.is_identity());
    }
  }
}

TEST(BassSerre, FoldingConfluence) {
  auto g = free_group();
  auto base = words(g, {"a^2", "b", "a b a^-1"});
  auto ref = build_core_graph(g, base)->canonical_encoding();
  Lcg rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    auto gens = base;
    for (std::size_t i = gens.size(); i > 1; --i) std::swap(gens[i - 1], gens[rng.below(i)]);
    std::size_t i = rng.below(gens.size()), j = (i + 1 + rng.below(gens.size() - 1)) % gens.size();
    gens[i] = g.multiply(gens[i], rng.below(2) ? gens[j] : g.invert(gens[j]));
    if (rng.below(2)) gens[j] = g.invert(gens[j]);
    EXPECT_EQ(build_core_graph(g, gens)->canonical_encoding(), ref);
  }
}

TEST(BassSerre, XiComplementExamples) {
  auto g = free_group();
  auto factor = subgroup(g, {"a"});
  auto comp = xi_complement(*factor);
  ASSERT_EQ(comp.size(), 1u);
  EXPECT_TRUE(comp[0].is_identity());
  EXPECT_TRUE(xi_complement(*trivial_subgroup(g)).empty());
  auto c = subgroup(g, {"a^2", "b", "a b a^-1"});
  auto xc = xi_complement(*c);
  EXPECT_LE(xc.size(), 2u);
}

TEST(BassSerre, XiComplementMatchesBruteForce) {
  auto g = free_group();
  auto ball = g.ball(5);
  for (auto lits : std::vector<std::vector<std::string>>{{"a"}, {"a^2", "b", "a b a^-1"}, {"a b", "b^2"}, {"a^3", "b a b^-1"}}) {
    auto c = subgroup(g, lits);
    auto comp = xi_complement(*c);
    for (const auto& w : ball) {
      bool exceptional = false;
      for (const auto& r : comp) exceptional |= c->same_coset(w, r);
      EXPECT_EQ(!in_xi(*c, w), exceptional) << g.format(w);
    }
  }
}
