#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kurosh/core.hpp"
#include "kurosh/factor_subgroup.hpp"
#include "kurosh/word.hpp"

namespace kurosh {

enum class VertexType { g_type, h_type, zero };

inline VertexType vertex_type_of(Side s) {
  return s == Side::left ? VertexType::g_type : VertexType::h_type;
}

inline Side side_of(VertexType t) { return t == VertexType::g_type ? Side::left : Side::right; }

struct GraphVertex {
  VertexType type = VertexType::zero;
  FactorSubgroup stab;
  bool core = false;
};

// Edge between a factor vertex C·x·v_G (or v_H) and a zero vertex. The label
// is a canonical coset representative in the factor vertex's coordinates: the
// zero vertex is C·x·label·v0.
struct GraphEdge {
  std::size_t side_vertex = 0;
  std::size_t zero_vertex = 0;
  Side side = Side::left;
  Integer label;
  bool core = false;
  bool maxtree = false;
};

struct KuroshReport {
  std::size_t t = 0;
  std::size_t graph_rank = 0;
  std::size_t total = 0;

  friend bool operator==(const KuroshReport&, const KuroshReport&) = default;
};

// Maximal tree, lifts into the Bass-Serre tree and the fundamental transversal.
// For a zero vertex the lift word y gives y·v0; for a factor vertex it is the
// coordinate representative r with lift r·v_G, and each incident edge with
// label l lifts to (r·l)·e_G. Edge words are the x with lift x·e_G or x·e_H.
struct SpanningData {
  std::vector<std::size_t> bfs_order;
  std::vector<std::optional<std::size_t>> parent_edge;
  std::vector<std::optional<Word>> vertex_word;
  std::vector<std::optional<Word>> edge_word;
  std::vector<std::size_t> tree_edges;
  std::vector<std::size_t> transversal;
};

// The folded quotient graph C\T of a finitely generated subgroup C of G*H.
class QuotientGraph {
 public:
  QuotientGraph(FreeProduct group, std::vector<Word> gens)
      : group_(std::move(group)), gens_(std::move(gens)) {
    fold_and_build();
    compute_core();
    compute_spanning();
  }

  const FreeProduct& group() const { return group_; }
  const std::vector<Word>& generators() const { return gens_; }
  const std::vector<GraphVertex>& vertices() const { return vertices_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  std::size_t base() const { return 0; }
  const SpanningData& spanning() const { return spanning_; }

  const FactorGroup& factor_of(std::size_t side_vertex) const {
    return group_.factor(side_of(vertices_[side_vertex].type));
  }

  std::optional<std::size_t> zero_edge(std::size_t zero_vertex, Side s) const {
    return zero_adj_[zero_vertex][index_of(s)];
  }

  std::optional<std::size_t> side_edge(std::size_t side_vertex, const Integer& label) const {
    const auto& m = side_adj_[side_vertex];
    auto it = m.find(vertices_[side_vertex].stab.coset_rep(factor_of(side_vertex), label));
    if (it == m.end()) return std::nullopt;
    return it->second;
  }

  // Edges at a vertex in canonical order.
  std::vector<std::size_t> incident(std::size_t v) const {
    std::vector<std::size_t> out;
    if (vertices_[v].type == VertexType::zero) {
      for (const auto& e : zero_adj_[v])
        if (e) out.push_back(*e);
    } else {
      for (const auto& [l, e] : side_adj_[v]) out.push_back(e);
    }
    return out;
  }

  std::size_t opposite(std::size_t edge, std::size_t v) const {
    const auto& e = edges_[edge];
    return e.zero_vertex == v ? e.side_vertex : e.zero_vertex;
  }

  // Reads w from the base. Returns the zero vertex C·w·v0 if the path stays in
  // the folded graph, and the traversed edges (two per syllable) when asked.
  std::optional<std::size_t> read(const Word& w, std::vector<std::size_t>* trace = nullptr) const {
    std::size_t u = base();
    for (const auto& s : w.syllables()) {
      auto e = zero_edge(u, s.side);
      if (!e) return std::nullopt;
      const auto& edge = edges_[*e];
      const auto& f = group_.factor(s.side);
      auto e2 = side_edge(edge.side_vertex, f.multiply(edge.label, s.elem));
      if (!e2) return std::nullopt;
      if (trace) {
        trace->push_back(*e);
        trace->push_back(*e2);
      }
      u = edges_[*e2].zero_vertex;
    }
    return u;
  }

  bool contains(const Word& w) const {
    auto end = read(w);
    return end && *end == base();
  }

  // C·u == C·v.
  bool same_coset(const Word& u, const Word& v) const {
    return contains(group_.multiply(u, group_.invert(v)));
  }

  KuroshReport kurosh() const {
    KuroshReport r;
    std::size_t nv = 0, ne = 0;
    for (const auto& v : vertices_)
      if (v.core) {
        ++nv;
        if (!v.stab.is_trivial()) ++r.t;
      }
    for (const auto& e : edges_)
      if (e.core) ++ne;
    r.graph_rank = ne + 1 - nv;
    r.total = r.t + r.graph_rank;
    return r;
  }

  // Coordinate representative r of a core factor vertex in its lift r·v_G.
  const Word& vertex_word(std::size_t v) const { return *spanning_.vertex_word.at(v); }
  const Word& edge_word(std::size_t e) const { return *spanning_.edge_word.at(e); }

  // String identifying the graph up to isomorphism; vertices and edges are
  // numbered canonically, so equal strings mean isomorphic graphs.
  std::string canonical_encoding() const {
    std::string s;
    for (const auto& v : vertices_)
      s += std::to_string(static_cast<int>(v.type)) + ":" + v.stab.describe() + ";";
    s += "|";
    for (const auto& e : edges_)
      s += std::to_string(e.side_vertex) + "-" + std::to_string(e.zero_vertex) + "-" +
           std::to_string(static_cast<int>(e.side)) + "-" + e.label.str() + ";";
    return s;
  }

 private:
  struct FoldVertex {
    VertexType type;
    FactorSubgroup stab;
    bool alive = true;
    std::vector<std::size_t> edges;
  };
  struct FoldEdge {
    std::size_t side_vertex;
    std::size_t zero_vertex;
    Side side;
    Integer label;
    bool alive = true;
  };

  struct Folder {
    const FreeProduct& group;
    std::vector<FoldVertex> v;
    std::vector<FoldEdge> e;

    std::size_t add_vertex(VertexType t, FactorSubgroup s) {
      v.push_back({t, std::move(s), true, {}});
      return v.size() - 1;
    }

    void add_edge(std::size_t side_v, std::size_t zero_v, Side side, Integer label) {
      e.push_back({side_v, zero_v, side, std::move(label), true});
      v[side_v].edges.push_back(e.size() - 1);
      v[zero_v].edges.push_back(e.size() - 1);
    }

    std::vector<std::size_t> live(std::size_t x) const {
      std::vector<std::size_t> out;
      for (auto id : v[x].edges)
        if (e[id].alive) out.push_back(id);
      return out;
    }

    void normalize_labels(std::size_t x) {
      const auto& f = group.factor(side_of(v[x].type));
      for (auto id : live(x)) e[id].label = v[x].stab.coset_rep(f, e[id].label);
    }

    // Two same-side edges at a zero vertex are the same edge of C\T.
    void fold_zero(std::size_t e1, std::size_t e2) {
      const Side side = e[e1].side;
      const auto& f = group.factor(side);
      const std::size_t a = e[e1].side_vertex, b = e[e2].side_vertex;
      const Integer t = f.multiply(e[e1].label, f.invert(e[e2].label));
      if (a != b) {
        for (auto id : live(b)) {
          e[id].label = f.multiply(t, e[id].label);
          e[id].side_vertex = a;
          v[a].edges.push_back(id);
        }
        v[a].stab = v[a].stab.join(f, v[b].stab.conjugate(f, t));
        v[b].alive = false;
        v[b].edges.clear();
      } else {
        v[a].stab = v[a].stab.adjoin(f, t);
      }
      e[e2].alive = false;
      normalize_labels(a);
    }

    // Two edges at a factor vertex with the same coset label.
    void fold_side(std::size_t e1, std::size_t e2) {
      std::size_t u = e[e1].zero_vertex, w = e[e2].zero_vertex;
      if (w == 0) std::swap(u, w);
      e[e2].alive = false;
      if (u != w) {
        for (auto id : live(w)) {
          e[id].zero_vertex = u;
          v[u].edges.push_back(id);
        }
        v[w].alive = false;
        v[w].edges.clear();
      }
    }

    bool step() {
      for (std::size_t x = 0; x < v.size(); ++x) {
        if (!v[x].alive) continue;
        auto es = live(x);
        if (v[x].type == VertexType::zero) {
          for (std::size_t i = 0; i < es.size(); ++i)
            for (std::size_t j = i + 1; j < es.size(); ++j)
              if (e[es[i]].side == e[es[j]].side) {
                fold_zero(es[i], es[j]);
                return true;
              }
        } else {
          for (std::size_t i = 0; i < es.size(); ++i)
            for (std::size_t j = i + 1; j < es.size(); ++j)
              if (e[es[i]].label == e[es[j]].label) {
                fold_side(es[i], es[j]);
                return true;
              }
        }
      }
      return false;
    }
  };

  void fold_and_build() {
    Folder fd{group_, {}, {}};
    fd.add_vertex(VertexType::zero, FactorSubgroup{});
    for (const auto& g : gens_) {
      for (const auto& s : g.syllables()) group_.factor(s.side).require_element(s.elem);
      const auto& syl = g.syllables();
      std::size_t prev = 0;
      for (std::size_t i = 0; i < syl.size(); ++i) {
        const auto& f = group_.factor(syl[i].side);
        std::size_t sv = fd.add_vertex(vertex_type_of(syl[i].side), FactorSubgroup::trivial(f));
        std::size_t next = (i + 1 == syl.size()) ? 0 : fd.add_vertex(VertexType::zero, FactorSubgroup{});
        fd.add_edge(sv, prev, syl[i].side, Integer(0));
        fd.add_edge(sv, next, syl[i].side, syl[i].elem);
        prev = next;
      }
    }
    while (fd.step()) {
    }
    canonicalize(fd);
  }

  // Renumbers by breadth-first search from the base and moves each factor
  // vertex's coordinates so that its parent edge carries the identity label.
  void canonicalize(Folder& fd) {
    std::vector<std::optional<std::size_t>> vid(fd.v.size());
    std::vector<std::optional<std::size_t>> eid(fd.e.size());
    std::vector<Integer> shift(fd.v.size());
    std::deque<std::size_t> queue{0};
    vid[0] = 0;
    vertices_.push_back({VertexType::zero, FactorSubgroup{}, false});
    std::vector<std::size_t> order{0};

    auto new_label = [&](std::size_t id) {
      const auto& fe = fd.e[id];
      const auto& f = group_.factor(fe.side);
      const auto& stab = vertices_[*vid[fe.side_vertex]].stab;
      return stab.coset_rep(f, f.multiply(f.invert(shift[fe.side_vertex]), fe.label));
    };

    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      auto es = fd.live(x);
      if (fd.v[x].type == VertexType::zero) {
        std::sort(es.begin(), es.end(), [&](auto a, auto b) { return fd.e[a].side < fd.e[b].side; });
      } else {
        std::sort(es.begin(), es.end(), [&](auto a, auto b) { return new_label(a) < new_label(b); });
      }
      for (auto id : es) {
        const auto& fe = fd.e[id];
        std::size_t y = (fe.zero_vertex == x) ? fe.side_vertex : fe.zero_vertex;
        if (!vid[y]) {
          vid[y] = vertices_.size();
          if (fd.v[y].type == VertexType::zero) {
            vertices_.push_back({VertexType::zero, FactorSubgroup{}, false});
          } else {
            const auto& f = group_.factor(fe.side);
            shift[y] = fe.label;
            vertices_.push_back({fd.v[y].type, fd.v[y].stab.conjugate(f, f.invert(fe.label)), false});
          }
          queue.push_back(y);
        }
        if (!eid[id]) {
          eid[id] = edges_.size();
          edges_.push_back({*vid[fe.side_vertex], *vid[fe.zero_vertex], fe.side, Integer(0), false, false});
        }
      }
    }
    for (std::size_t id = 0; id < fd.e.size(); ++id)
      if (eid[id]) edges_[*eid[id]].label = new_label(id);

    zero_adj_.assign(vertices_.size(), {});
    side_adj_.assign(vertices_.size(), {});
    for (std::size_t id = 0; id < edges_.size(); ++id) {
      const auto& e = edges_[id];
      zero_adj_[e.zero_vertex][index_of(e.side)] = id;
      side_adj_[e.side_vertex][e.label] = id;
    }
  }

  void compute_core() {
    std::vector<std::size_t> degree(vertices_.size(), 0);
    std::vector<bool> edge_alive(edges_.size(), true);
    std::vector<bool> vertex_alive(vertices_.size(), true);
    for (const auto& e : edges_) {
      ++degree[e.side_vertex];
      ++degree[e.zero_vertex];
    }
    auto removable = [&](std::size_t x) {
      return vertex_alive[x] && x != base() && vertices_[x].stab.is_trivial() && degree[x] <= 1;
    };
    std::deque<std::size_t> queue;
    for (std::size_t x = 0; x < vertices_.size(); ++x)
      if (removable(x)) queue.push_back(x);
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      if (!removable(x)) continue;
      vertex_alive[x] = false;
      for (auto id : incident(x)) {
        if (!edge_alive[id]) continue;
        edge_alive[id] = false;
        std::size_t y = opposite(id, x);
        --degree[y];
        --degree[x];
        if (removable(y)) queue.push_back(y);
      }
    }
    for (std::size_t x = 0; x < vertices_.size(); ++x) vertices_[x].core = vertex_alive[x];
    for (std::size_t id = 0; id < edges_.size(); ++id) edges_[id].core = edge_alive[id];
  }

  void compute_spanning() {
    auto& sp = spanning_;
    sp.parent_edge.assign(vertices_.size(), std::nullopt);
    sp.vertex_word.assign(vertices_.size(), std::nullopt);
    sp.edge_word.assign(edges_.size(), std::nullopt);
    std::vector<bool> tree(edges_.size(), false);
    sp.vertex_word[base()] = group_.identity();
    sp.bfs_order.push_back(base());
    for (std::size_t i = 0; i < sp.bfs_order.size(); ++i) {
      std::size_t x = sp.bfs_order[i];
      for (auto id : incident(x)) {
        if (!edges_[id].core) continue;
        std::size_t y = opposite(id, x);
        if (sp.vertex_word[y]) continue;
        const auto& e = edges_[id];
        Word l = group_.letter(e.side, e.label);
        if (vertices_[y].type == VertexType::zero)
          sp.vertex_word[y] = group_.multiply(*sp.vertex_word[x], l);
        else
          sp.vertex_word[y] = group_.multiply(*sp.vertex_word[x], group_.invert(l));
        sp.parent_edge[y] = id;
        tree[id] = true;
        sp.bfs_order.push_back(y);
      }
    }
    for (std::size_t id = 0; id < edges_.size(); ++id) {
      auto& e = edges_[id];
      if (!e.core) continue;
      e.maxtree = tree[id];
      (tree[id] ? sp.tree_edges : sp.transversal).push_back(id);
      sp.edge_word[id] =
          group_.multiply(*sp.vertex_word[e.side_vertex], group_.letter(e.side, e.label));
    }
  }

  FreeProduct group_;
  std::vector<Word> gens_;
  std::vector<GraphVertex> vertices_;
  std::vector<GraphEdge> edges_;
  std::vector<std::array<std::optional<std::size_t>, 2>> zero_adj_;
  std::vector<std::map<Integer, std::size_t>> side_adj_;
  SpanningData spanning_;
};

using SubgroupRef = std::shared_ptr<const QuotientGraph>;

inline SubgroupRef build_core_graph(const FreeProduct& group, std::vector<Word> gens) {
  return std::make_shared<const QuotientGraph>(group, std::move(gens));
}

inline SubgroupRef trivial_subgroup(const FreeProduct& group) { return build_core_graph(group, {}); }

inline bool membership(const QuotientGraph& g, const Word& w) { return g.contains(w); }

inline KuroshReport kurosh_rank(const QuotientGraph& g) { return g.kurosh(); }

inline const SpanningData& spanning_data(const QuotientGraph& g) { return g.spanning(); }

// Core vertex and edge ids.
struct CoreView {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> edges;
};

inline CoreView fundamental_core(const QuotientGraph& g) {
  CoreView c;
  for (std::size_t i = 0; i < g.vertices().size(); ++i)
    if (g.vertices()[i].core) c.vertices.push_back(i);
  for (std::size_t i = 0; i < g.edges().size(); ++i)
    if (g.edges()[i].core) c.edges.push_back(i);
  return c;
}

// Is C·lambda in Xi: some g in X_G, h in X_H move C·lambda and keep
// C·lambda·g^e and C·lambda·h^d apart for all signs.
inline bool in_xi(const QuotientGraph& g, const Word& lambda) {
  const auto& grp = g.group();
  auto moves = [&](const Word& x) { return !g.same_coset(grp.multiply(lambda, x), lambda); };
  for (const auto& a : grp.factor_generators(Side::left)) {
    if (!moves(a)) continue;
    for (const auto& b : grp.factor_generators(Side::right)) {
      if (!moves(b)) continue;
      bool apart = true;
      for (const auto& x : {a, grp.invert(a)})
        for (const auto& y : {b, grp.invert(b)})
          if (g.same_coset(grp.multiply(lambda, x), grp.multiply(lambda, y))) apart = false;
      if (apart) return true;
    }
  }
  return false;
}

// Representatives of the right cosets outside Xi; all lie among core zero vertices.
inline std::vector<Word> xi_complement(const QuotientGraph& g) {
  std::vector<Word> out;
  for (auto x : g.spanning().bfs_order)
    if (g.vertices()[x].type == VertexType::zero && !in_xi(g, g.vertex_word(x)))
      out.push_back(g.vertex_word(x));
  return out;
}

}  // namespace kurosh
