#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kurosh/factor_subgroup.hpp"
#include "kurosh/quotient_graph.hpp"
#include "kurosh/word.hpp"

namespace kurosh {

// A pair of factor subgroups G0 <= G and H0 <= H.
struct SubfactorPair {
  FactorSubgroup g0;
  FactorSubgroup h0;

  const FactorSubgroup& on(Side s) const { return s == Side::left ? g0 : h0; }
};

// Conjugated factor part alpha·S·alpha^-1 attached to a stabilized lifted vertex.
struct StabilizedLift {
  std::size_t vertex = 0;
  Word conjugator;
  Integer parent_label;
};

struct IntersectionData {
  std::vector<Word> f0;
  std::vector<Word> f0_small;
  std::vector<Word> zetas;
  std::vector<std::size_t> zeta_edges;
  std::vector<StabilizedLift> alphas;
  std::vector<StabilizedLift> betas;
};

// Generator list of C ∩ <G0,H0> with the bookkeeping needed to rewrite.
struct IntersectionGenerators {
  std::vector<Word> words;
  std::size_t zeta_count = 0;
  // One block per stabilized lift: its first generator index, the lift, and
  // the factor subgroup l^-1 S l ∩ G0 (or H0) whose generators are conjugated.
  struct Block {
    std::size_t offset = 0;
    StabilizedLift lift;
    Side side = Side::left;
    FactorSubgroup local;
    std::vector<Integer> local_generators;
  };
  std::vector<Block> blocks;
};

using GeneratorProduct = std::vector<std::pair<std::size_t, Integer>>;

struct RewriteResult {
  GeneratorProduct product;
  std::vector<std::size_t> critical_trace;
};

inline bool in_subfactor_pair(const Word& w, const SubfactorPair& p) {
  for (const auto& s : w.syllables())
    if (!p.on(s.side).contains(s.elem)) return false;
  return true;
}

inline IntersectionData theorem_data(const QuotientGraph& g) {
  const auto& grp = g.group();
  const auto& sp = g.spanning();
  IntersectionData d;
  for (auto id : sp.transversal) {
    const auto& e = g.edges()[id];
    d.zetas.push_back(grp.multiply(g.vertex_word(e.zero_vertex), grp.invert(g.edge_word(id))));
    d.zeta_edges.push_back(id);
  }
  for (auto v : sp.bfs_order) {
    const auto& vert = g.vertices()[v];
    if (vert.type == VertexType::zero || vert.stab.is_trivial()) continue;
    std::size_t pe = *sp.parent_edge[v];
    StabilizedLift lift{v, g.edge_word(pe), g.edges()[pe].label};
    (vert.type == VertexType::g_type ? d.alphas : d.betas).push_back(std::move(lift));
  }
  for (const auto& z : d.zetas) d.f0_small.push_back(z);
  for (const auto& a : d.alphas) d.f0_small.push_back(a.conjugator);
  for (const auto& b : d.betas) d.f0_small.push_back(b.conjugator);
  d.f0 = d.f0_small;
  for (auto id : sp.tree_edges) d.f0.push_back(g.edge_word(id));
  for (auto id : sp.transversal) d.f0.push_back(g.edge_word(id));
  std::sort(d.f0.begin(), d.f0.end());
  d.f0.erase(std::unique(d.f0.begin(), d.f0.end()), d.f0.end());
  std::sort(d.f0_small.begin(), d.f0_small.end());
  d.f0_small.erase(std::unique(d.f0_small.begin(), d.f0_small.end()), d.f0_small.end());
  return d;
}

inline IntersectionGenerators intersection_generators(const IntersectionData& d, const QuotientGraph& g,
                                                      const SubfactorPair& p) {
  const auto& grp = g.group();
  for (const auto& w : d.f0)
    if (!in_subfactor_pair(w, p))
      throw DomainError("F0 element " + grp.format(w) + " is not in <G0,H0>");
  IntersectionGenerators out;
  out.words = d.zetas;
  out.zeta_count = d.zetas.size();
  auto add_blocks = [&](const std::vector<StabilizedLift>& lifts, Side side) {
    const auto& f = grp.factor(side);
    for (const auto& lift : lifts) {
      const auto& stab = g.vertices()[lift.vertex].stab;
      IntersectionGenerators::Block b;
      b.offset = out.words.size();
      b.lift = lift;
      b.side = side;
      b.local = stab.conjugate(f, f.invert(lift.parent_label)).intersect(p.on(side));
      b.local_generators = b.local.generators(f);
      for (const auto& x : b.local_generators)
        out.words.push_back(grp.conjugate(lift.conjugator, grp.letter(side, x)));
      out.blocks.push_back(std::move(b));
    }
  };
  add_blocks(d.alphas, Side::left);
  add_blocks(d.betas, Side::right);
  return out;
}

// One vertex or edge of the geodesic [1·v0, w·v0] in the tree.
struct GeodesicItem {
  enum class Kind { zero_vertex, side_vertex, edge } kind;
  Word coordinate;
  Side side = Side::left;
  std::optional<std::size_t> projection;
  bool critical = true;
};

inline std::vector<GeodesicItem> geodesic(const QuotientGraph& g, const Word& w) {
  const auto& grp = g.group();
  std::vector<GeodesicItem> out;
  auto lifted_zero = [&](std::size_t u, const Word& c) {
    return g.vertices()[u].core && g.vertex_word(u) == c;
  };
  auto lifted_side = [&](std::size_t v, const Word& c, Side s) {
    if (!g.vertices()[v].core) return false;
    Word d = grp.multiply(grp.invert(g.vertex_word(v)), c);
    return d.syllable_length() == 0 || (d.syllable_length() == 1 && d.front().side == s);
  };
  auto lifted_edge = [&](std::size_t e, const Word& c) {
    return g.edges()[e].core && g.edge_word(e) == c;
  };
  std::optional<std::size_t> u = g.base();
  Word prefix;
  out.push_back({GeodesicItem::Kind::zero_vertex, prefix, Side::left, u, !lifted_zero(*u, prefix)});
  for (const auto& s : w.syllables()) {
    std::optional<std::size_t> ea, eb;
    if (u) ea = g.zero_edge(*u, s.side);
    if (ea) {
      const auto& edge = g.edges()[*ea];
      eb = g.side_edge(edge.side_vertex, grp.factor(s.side).multiply(edge.label, s.elem));
    }
    Word next = grp.multiply(prefix, grp.letter(s.side, s.elem));
    std::optional<std::size_t> sv;
    if (ea) sv = g.edges()[*ea].side_vertex;
    out.push_back({GeodesicItem::Kind::edge, prefix, s.side, ea, !(ea && lifted_edge(*ea, prefix))});
    out.push_back({GeodesicItem::Kind::side_vertex, prefix, s.side, sv, !(sv && lifted_side(*sv, prefix, s.side))});
    out.push_back({GeodesicItem::Kind::edge, next, s.side, eb, !(eb && lifted_edge(*eb, next))});
    u = eb ? std::optional<std::size_t>(g.edges()[*eb].zero_vertex) : std::nullopt;
    out.push_back({GeodesicItem::Kind::zero_vertex, next, s.side, u, !(u && lifted_zero(*u, next))});
    prefix = std::move(next);
  }
  return out;
}

inline std::size_t critical_number(const QuotientGraph& g, const Word& w) {
  std::size_t n = 0;
  for (const auto& item : geodesic(g, w))
    if (item.critical) ++n;
  return n;
}

inline RewriteResult rewrite_in_generators(const QuotientGraph& g, const IntersectionData& d,
                                           const IntersectionGenerators& gens, const SubfactorPair& p,
                                           const Word& x) {
  const auto& grp = g.group();
  if (!g.contains(x)) throw DomainError(grp.format(x) + " is not in C");
  if (!in_subfactor_pair(x, p)) throw DomainError(grp.format(x) + " is not in <G0,H0>");

  auto zeta_index = [&](std::size_t edge) {
    for (std::size_t i = 0; i < d.zeta_edges.size(); ++i)
      if (d.zeta_edges[i] == edge) return i;
    throw std::logic_error("edge is not in the transversal");
  };
  auto block_of = [&](std::size_t vertex) -> const IntersectionGenerators::Block& {
    for (const auto& b : gens.blocks)
      if (b.lift.vertex == vertex) return b;
    throw std::logic_error("vertex has no stabilizer block");
  };

  RewriteResult r;
  Word cur = x;
  while (true) {
    auto path = geodesic(g, cur);
    std::size_t crit = 0;
    for (const auto& item : path)
      if (item.critical) ++crit;
    if (!r.critical_trace.empty() && crit >= r.critical_trace.back())
      throw std::logic_error("critical number did not decrease");
    r.critical_trace.push_back(crit);
    if (crit == 0) break;
    std::size_t k = 0;
    while (!path[k].critical) ++k;
    const auto& prev = path[k - 1];
    Word c;
    GeneratorProduct step;
    if (path[k].kind != GeodesicItem::Kind::edge) {
      std::size_t i = zeta_index(*prev.projection);
      c = d.zetas[i];
      step.emplace_back(i, Integer(-1));
    } else if (prev.kind == GeodesicItem::Kind::zero_vertex) {
      std::size_t i = zeta_index(*path[k].projection);
      c = grp.invert(d.zetas[i]);
      step.emplace_back(i, Integer(1));
    } else {
      const std::size_t v = *prev.projection;
      const Side side = prev.side;
      const auto& f = grp.factor(side);
      Word local = grp.multiply(grp.invert(g.vertex_word(v)), path[k].coordinate);
      Integer l = local.is_identity() ? Integer(0) : local.front().elem;
      Integer lhat = g.vertices()[v].stab.coset_rep(f, l);
      const auto& b = block_of(v);
      Integer lp = b.lift.parent_label;
      Integer m = f.multiply(f.multiply(f.invert(lp), l), f.multiply(f.invert(lhat), lp));
      c = grp.multiply(g.edge_word(*g.side_edge(v, lhat)), grp.invert(path[k].coordinate));
      for (const auto& [gi, e] : b.local.express(f, m)) step.emplace_back(b.offset + gi, e);
    }
    for (auto& s : step) {
      if (!r.product.empty() && r.product.back().first == s.first) {
        r.product.back().second += s.second;
        if (r.product.back().second.is_zero()) r.product.pop_back();
      } else {
        r.product.push_back(std::move(s));
      }
    }
    cur = grp.multiply(c, cur);
  }
  return r;
}

inline Word evaluate_product(const FreeProduct& grp, const std::vector<Word>& gens, const GeneratorProduct& p) {
  Word w;
  for (const auto& [i, e] : p) {
    Word base = e < 0 ? grp.invert(gens.at(i)) : gens.at(i);
    for (Integer k = 0; k < abs(e); ++k) w = grp.multiply(w, base);
  }
  return w;
}

inline bool kurosh_bound_check(const QuotientGraph& c, const QuotientGraph& intersection) {
  return intersection.kurosh().total <= c.kurosh().total;
}

}  // namespace kurosh
