#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kurosh/core.hpp"
#include "kurosh/quotient_graph.hpp"
#include "kurosh/word.hpp"

namespace kurosh {

// A finite symmetric set of elements with its internal multiplication table.
class ConeDomain {
 public:
  struct Triple {
    std::size_t left, right, product;
  };

  ConeDomain(FreeProduct group, std::vector<Word> elems) : group_(std::move(group)), elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    for (std::size_t i = 0; i < elems_.size(); ++i) index_.emplace(elems_[i], i);
    if (!find(group_.identity())) throw DomainError("cone domain must contain the identity");
    inverse_.resize(elems_.size());
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      auto j = find(group_.invert(elems_[i]));
      if (!j) throw DomainError("cone domain is not symmetric at " + group_.format(elems_[i]));
      inverse_[i] = *j;
    }
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (elems_[i].is_identity()) continue;
      for (std::size_t j = 0; j < elems_.size(); ++j) {
        if (elems_[j].is_identity()) continue;
        if (auto k = find(group_.multiply(elems_[i], elems_[j]))) triples_.push_back({i, j, *k});
      }
    }
  }

  static std::shared_ptr<const ConeDomain> ball(const FreeProduct& group, std::size_t radius) {
    return std::make_shared<const ConeDomain>(group, group.ball(radius));
  }

  const FreeProduct& group() const { return group_; }
  std::size_t size() const { return elems_.size(); }
  const std::vector<Word>& elements() const { return elems_; }
  const Word& word(std::size_t i) const { return elems_[i]; }
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }
  const std::vector<Triple>& triples() const { return triples_; }

  std::optional<std::size_t> find(const Word& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  FreeProduct group_;
  std::vector<Word> elems_;
  std::unordered_map<Word, std::size_t, WordHash> index_;
  std::vector<std::size_t> inverse_;
  std::vector<Triple> triples_;
};

using DomainRef = std::shared_ptr<const ConeDomain>;

// Sign map on a finite symmetric domain, relative to a subgroup C.
struct TruncatedCone {
  DomainRef domain;
  SubgroupRef relative_to;
  std::vector<int> sign;

  int at(const Word& w) const {
    auto i = domain->find(w);
    if (!i) throw DomainError("element " + domain->group().format(w) + " is outside the cone domain");
    return sign[*i];
  }
  std::optional<int> lookup(const Word& w) const {
    auto i = domain->find(w);
    if (!i) return std::nullopt;
    return sign[*i];
  }
  std::vector<Word> positives() const {
    std::vector<Word> out;
    for (std::size_t i = 0; i < sign.size(); ++i)
      if (sign[i] > 0) out.push_back(domain->word(i));
    return out;
  }
};

// Canonical order: lexicographic over the domain with +1 < 0 < -1.
inline bool cone_less(const TruncatedCone& a, const TruncatedCone& b) {
  auto rank = [](int s) { return s > 0 ? 0 : (s == 0 ? 1 : 2); };
  for (std::size_t i = 0; i < std::min(a.sign.size(), b.sign.size()); ++i)
    if (a.sign[i] != b.sign[i]) return rank(a.sign[i]) < rank(b.sign[i]);
  return a.sign.size() < b.sign.size();
}

inline std::vector<bool> membership_flags(const ConeDomain& d, const QuotientGraph& c) {
  std::vector<bool> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = c.contains(d.word(i));
  return out;
}

struct Violation {
  std::string kind;
  std::vector<Word> witnesses;
};

inline std::vector<Violation> check_axioms(const TruncatedCone& c) {
  const auto& d = *c.domain;
  if (c.sign.size() != d.size()) throw DomainError("sign map does not cover the domain");
  for (int s : c.sign)
    if (s < -1 || s > 1) throw DomainError("sign values must be -1, 0 or +1");
  auto in_c = membership_flags(d, *c.relative_to);
  std::vector<Violation> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (c.sign[d.inverse(i)] != -c.sign[i]) out.push_back({"inverse", {d.word(i)}});
    if ((c.sign[i] == 0) != in_c[i]) out.push_back({"zero-set", {d.word(i)}});
  }
  for (const auto& t : d.triples()) {
    int a = c.sign[t.left], b = c.sign[t.right], p = c.sign[t.product];
    if (a > 0 && b > 0 && p <= 0) out.push_back({"closure", {d.word(t.left), d.word(t.right)}});
    if (a > 0 && in_c[t.right] && p <= 0) out.push_back({"absorption", {d.word(t.left), d.word(t.right)}});
    if (b > 0 && in_c[t.left] && p <= 0) out.push_back({"absorption", {d.word(t.left), d.word(t.right)}});
  }
  return out;
}

struct EnumerationOptions {
  std::map<std::size_t, int> pins;
  std::size_t limit = 0;
  std::size_t guard = 20000;
};

namespace detail {

// Horn-style constraint system over one boolean per inverse pair {w, w^-1}:
// true means the pair's representative (the smaller index) is positive.
class ConeSolver {
 public:
  ConeSolver(const ConeDomain& d, const std::vector<bool>& in_c) : in_c_(in_c) {
    var_.assign(d.size(), npos);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (in_c[i] || var_[i] != npos) continue;
      var_[i] = var_[d.inverse(i)] = reps_.size();
      reps_.push_back(i);
    }
    watch_.assign(2 * reps_.size(), {});
    value_.assign(reps_.size(), -1);
    for (const auto& t : d.triples()) {
      bool ci = in_c[t.left], cj = in_c[t.right], ck = in_c[t.product];
      if (!ci && !cj) {
        if (ck)
          add({neg(pos(t.left)), neg(pos(t.right))});
        else
          add({neg(pos(t.left)), neg(pos(t.right)), pos(t.product)});
      } else if (ci && !cj) {
        add({neg(pos(t.right)), pos(t.product)});
      } else if (!ci && cj) {
        add({neg(pos(t.left)), pos(t.product)});
      }
    }
  }

  std::size_t variables() const { return reps_.size(); }

  // Literal "element i is positive"; only for elements outside C.
  std::size_t pos(std::size_t i) const { return 2 * var_[i] + (reps_[var_[i]] == i ? 0 : 1); }
  static std::size_t neg(std::size_t lit) { return lit ^ 1; }

  bool assign(std::size_t lit) {
    std::size_t v = lit / 2;
    int want = (lit & 1) ? 0 : 1;
    if (value_[v] != -1) return value_[v] == want;
    value_[v] = want;
    trail_.push_back(v);
    std::vector<std::size_t> queue{lit};
    while (!queue.empty()) {
      std::size_t l = queue.back();
      queue.pop_back();
      for (auto ci : watch_[neg(l)]) {
        const auto& cl = clauses_[ci];
        std::optional<std::size_t> open;
        std::size_t open_count = 0;
        bool sat = false;
        for (std::size_t k = 0; k < cl.size; ++k) {
          int t = truth(cl.lits[k]);
          if (t == 1) sat = true;
          if (t == -1) {
            ++open_count;
            open = cl.lits[k];
          }
        }
        if (sat) continue;
        if (open_count == 0) return false;
        if (open_count == 1) {
          std::size_t u = *open / 2;
          value_[u] = (*open & 1) ? 0 : 1;
          trail_.push_back(u);
          queue.push_back(*open);
        }
      }
    }
    return true;
  }

  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t m) {
    while (trail_.size() > m) {
      value_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  std::optional<int> sign_of(std::size_t i) const {
    if (in_c_[i]) return 0;
    int t = truth(pos(i));
    if (t == -1) return std::nullopt;
    return t == 1 ? 1 : -1;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  struct Clause {
    std::array<std::size_t, 3> lits;
    std::size_t size;
  };

  int truth(std::size_t lit) const {
    int v = value_[lit / 2];
    if (v == -1) return -1;
    return (lit & 1) ? 1 - v : v;
  }

  void add(std::initializer_list<std::size_t> lits) {
    Clause c{{0, 0, 0}, 0};
    for (auto l : lits) {
      bool dup = false;
      for (std::size_t k = 0; k < c.size; ++k) dup = dup || c.lits[k] == l;
      if (!dup) c.lits[c.size++] = l;
    }
    for (std::size_t k = 0; k < c.size; ++k)
      for (std::size_t m = 0; m < c.size; ++m)
        if (k != m && c.lits[k] == neg(c.lits[m])) return;
    if (c.size == 1) {
      units_.push_back(c.lits[0]);
      return;
    }
    clauses_.push_back(c);
    for (std::size_t k = 0; k < c.size; ++k) watch_[c.lits[k]].push_back(clauses_.size() - 1);
  }

 public:
  const std::vector<std::size_t>& units() const { return units_; }

 private:
  const std::vector<bool>& in_c_;
  std::vector<std::size_t> var_;
  std::vector<std::size_t> reps_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<std::size_t>> watch_;
  std::vector<std::size_t> units_;
  std::vector<int> value_;
  std::vector<std::size_t> trail_;
};

}  // namespace detail

// All sign maps on the domain that pass check_axioms, in canonical order. The
// all-zero map is excluded.
inline std::vector<TruncatedCone> enumerate_cones(const DomainRef& domain, const SubgroupRef& c,
                                                  const EnumerationOptions& opt = {}) {
  const auto& d = *domain;
  if (d.size() > opt.guard) throw DomainError("cone domain exceeds the enumeration guard");
  auto in_c = membership_flags(d, *c);
  std::vector<TruncatedCone> out;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!in_c[i] && d.inverse(i) == i) return out;
  detail::ConeSolver solver(d, in_c);
  if (solver.variables() == 0) return out;
  for (auto u : solver.units())
    if (!solver.assign(u)) return out;
  for (const auto& [i, s] : opt.pins) {
    if (i >= d.size()) throw DomainError("pin outside the domain");
    if (in_c[i] ? s != 0 : (s == 0 || !solver.assign(s > 0 ? solver.pos(i) : detail::ConeSolver::neg(solver.pos(i)))))
      return out;
  }
  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    while (i < d.size() && solver.sign_of(i)) ++i;
    if (i == d.size()) {
      TruncatedCone cone{domain, c, std::vector<int>(d.size())};
      for (std::size_t k = 0; k < d.size(); ++k) cone.sign[k] = *solver.sign_of(k);
      out.push_back(std::move(cone));
      return opt.limit != 0 && out.size() >= opt.limit;
    }
    for (std::size_t lit : {solver.pos(i), detail::ConeSolver::neg(solver.pos(i))}) {
      auto m = solver.mark();
      if (solver.assign(lit) && search(i + 1)) return true;
      solver.undo(m);
    }
    return false;
  };
  search(0);
  return out;
}

// Cone from a total sign rule; the rule is consulted only off C.
inline TruncatedCone cone_from_rule(const DomainRef& domain, const SubgroupRef& c,
                                    const std::function<int(const Word&)>& rule) {
  TruncatedCone cone{domain, c, std::vector<int>(domain->size(), 0)};
  for (std::size_t i = 0; i < domain->size(); ++i)
    if (!c->contains(domain->word(i))) cone.sign[i] = rule(domain->word(i));
  return cone;
}

// The restriction of a cone to a smaller domain.
inline TruncatedCone restrict_cone(const TruncatedCone& c, const DomainRef& smaller) {
  TruncatedCone out{smaller, c.relative_to, std::vector<int>(smaller->size())};
  for (std::size_t i = 0; i < smaller->size(); ++i) out.sign[i] = c.at(smaller->word(i));
  return out;
}

struct PropertyEResult {
  std::optional<std::vector<int>> eta;
  // For each sign vector in canonical order, a product of seed elements in C.
  std::vector<std::vector<Word>> refutation;
};

inline PropertyEResult property_E_search(const QuotientGraph& c, const std::vector<Word>& x,
                                         const std::vector<Word>& f, std::size_t depth) {
  const auto& grp = c.group();
  for (const auto& w : x)
    if (c.contains(w)) throw DomainError("seed element " + grp.format(w) + " lies in C");
  for (const auto& w : f)
    if (c.contains(w)) throw DomainError("family element " + grp.format(w) + " lies in C");
  if (f.size() >= 20) throw DomainError("family too large for exhaustive sign search");
  PropertyEResult r;
  for (std::size_t mask = 0; mask < (std::size_t{1} << f.size()); ++mask) {
    std::vector<int> eta(f.size());
    std::vector<Word> seeds = x;
    for (std::size_t i = 0; i < f.size(); ++i) {
      eta[i] = ((mask >> (f.size() - 1 - i)) & 1) ? -1 : 1;
      seeds.push_back(eta[i] > 0 ? f[i] : grp.invert(f[i]));
    }
    std::optional<std::vector<Word>> hit;
    std::map<Word, std::vector<std::size_t>> seen;
    std::vector<std::pair<Word, std::vector<std::size_t>>> frontier;
    for (std::size_t s = 0; s < seeds.size() && !hit; ++s) {
      if (seen.emplace(seeds[s], std::vector<std::size_t>{s}).second) frontier.push_back({seeds[s], {s}});
    }
    for (std::size_t len = 1; len <= depth && !hit; ++len) {
      for (const auto& [w, path] : frontier)
        if (c.contains(w)) {
          std::vector<Word> cert;
          for (auto s : path) cert.push_back(seeds[s]);
          hit = cert;
          break;
        }
      if (hit || len == depth) break;
      std::vector<std::pair<Word, std::vector<std::size_t>>> next;
      for (const auto& [w, path] : frontier)
        for (std::size_t s = 0; s < seeds.size(); ++s) {
          Word p = grp.multiply(w, seeds[s]);
          auto np = path;
          np.push_back(s);
          if (seen.emplace(p, np).second) next.push_back({p, std::move(np)});
        }
      frontier = std::move(next);
    }
    if (!hit) {
      r.eta = eta;
      r.refutation.clear();
      return r;
    }
    r.refutation.push_back(*hit);
  }
  return r;
}

// P' = P ∪ P0: p is relative to C*, p0 lives on the zero set of p and is relative to C.
inline TruncatedCone extend_cone(const TruncatedCone& p, const TruncatedCone& p0) {
  TruncatedCone out{p.domain, p0.relative_to, p.sign};
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < p.sign.size(); ++i) {
    if (p.sign[i] != 0) continue;
    ++zeros;
    auto j = p0.domain->find(p.domain->word(i));
    if (!j) throw DomainError("incompatible domains: " + p.domain->group().format(p.domain->word(i)) +
                              " is missing from the subgroup cone");
    out.sign[i] = p0.sign[*j];
  }
  if (zeros != p0.domain->size()) throw DomainError("incompatible domains: subgroup cone has extra elements");
  return out;
}

// Sign of elements: +1 when C < wC. Returns nothing outside its range.
using SignOracle = std::function<std::optional<int>(const Word&)>;

inline SignOracle oracle_of(const TruncatedCone& c) {
  return [c](const Word& w) { return c.lookup(w); };
}

// (lambda+, lambda-): the first ball elements, in canonical order, with
// maximal and minimal coset.
inline std::pair<Word, Word> maximal_in_ball(const SignOracle& sign, const QuotientGraph& c,
                                             const std::vector<Word>& x, std::size_t n) {
  const auto& grp = c.group();
  if (std::all_of(x.begin(), x.end(), [&](const Word& w) { return c.contains(w); }))
    throw DomainError("every generator lies in C; the coset order is trivial");
  auto cmp = [&](const Word& u, const Word& v) {
    auto s = sign(grp.multiply(grp.invert(u), v));
    if (!s) throw DomainError("comparator undefined on " + grp.format(u) + " vs " + grp.format(v));
    return *s;
  };
  auto ball = grp.ball(x, n);
  Word hi = ball.front(), lo = ball.front();
  for (const auto& w : ball) {
    if (cmp(hi, w) > 0) hi = w;
    if (cmp(lo, w) < 0) lo = w;
  }
  return {hi, lo};
}

struct ProbeReport {
  std::vector<Word> covered;
  std::vector<Word> uncovered;
};

inline ProbeReport semigroup_probe(const std::vector<Word>& s, const TruncatedCone& c, std::size_t depth) {
  const auto& d = *c.domain;
  const auto& grp = d.group();
  for (const auto& w : s) {
    auto v = c.lookup(w);
    if (!v || *v <= 0) throw DomainError("probe seed " + grp.format(w) + " is not positive");
  }
  std::unordered_map<Word, bool, WordHash> reached;
  std::vector<Word> frontier;
  for (const auto& w : s)
    if (reached.emplace(w, true).second) frontier.push_back(w);
  for (std::size_t len = 1; len < depth; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (const auto& g : s) {
        Word p = grp.multiply(w, g);
        if (reached.emplace(p, true).second) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  ProbeReport r;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (c.sign[i] <= 0) continue;
    (reached.count(d.word(i)) ? r.covered : r.uncovered).push_back(d.word(i));
  }
  return r;
}

// Magnus-type order on a free product of two copies of Z: a -> 1+X, b -> 1+Y in
// noncommutative power series, compared by the first nonzero coefficient of
// w - 1 in degree-lexicographic monomial order. Degree one is the abelianization.
class MagnusOrder {
 public:
  explicit MagnusOrder(FreeProduct group) : group_(std::move(group)) {
    if (!group_.factor(Side::left).is_integer() || !group_.factor(Side::right).is_integer())
      throw DomainError("the Magnus order needs two integer factors");
  }

  int sign(const Word& w) const {
    if (w.is_identity()) return 0;
    for (std::size_t deg = 1;; ++deg)
      for (const auto& [mono, coeff] : expand(w, deg))
        if (!mono.empty()) return coeff > 0 ? 1 : -1;
  }

  int compare(const Word& u, const Word& v) const { return sign(group_.multiply(group_.invert(u), v)); }

 private:
  // Monomials are strings over {0,1} in degree-lexicographic order.
  struct MonoLess {
    bool operator()(const std::string& a, const std::string& b) const {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    }
  };
  using Series = std::map<std::string, Integer, MonoLess>;

  static Series power_of_generator(char letter, const Integer& k, std::size_t deg) {
    Series s;
    Integer binom = 1;
    for (std::size_t i = 0; i <= deg; ++i) {
      if (!binom.is_zero()) s[std::string(i, letter)] = binom;
      binom = binom * (k - Integer(i)) / Integer(i + 1);
    }
    return s;
  }

  static Series times(const Series& a, const Series& b, std::size_t deg) {
    Series out;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        if (ma.size() + mb.size() > deg) continue;
        out[ma + mb] += ca * cb;
      }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  }

  Series expand(const Word& w, std::size_t deg) const {
    Series s{{std::string(), Integer(1)}};
    for (const auto& syl : w.syllables())
      s = times(s, power_of_generator(syl.side == Side::left ? '0' : '1', syl.elem, deg), deg);
    return s;
  }

  FreeProduct group_;
};

}  // namespace kurosh
