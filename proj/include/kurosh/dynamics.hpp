#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kurosh/core.hpp"
#include "kurosh/pl_map.hpp"
#include "kurosh/preorders.hpp"
#include "kurosh/quotient_graph.hpp"
#include "kurosh/word.hpp"

namespace kurosh {

// A homomorphism from a free product of integer factors into PL homeomorphisms,
// given by the image of each factor generator. Reference point 0.
class PartialAction {
 public:
  explicit PartialAction(FreeProduct group) : group_(std::move(group)) {
    for (Side s : {Side::left, Side::right}) {
      const auto& f = group_.factor(s);
      if (!f.is_integer() && !f.is_trivial())
        throw DomainError("PL actions need integer or trivial factors; " + f.name() + " has torsion");
    }
  }

  const FreeProduct& group() const { return group_; }

  const PLMap& generator(Side s) const { return maps_[index_of(s)]; }

  void set_generator(Side s, PLMap m) {
    if (group_.factor(s).is_trivial() && !m.is_identity())
      throw DomainError("a trivial factor acts trivially");
    inverses_[index_of(s)] = m.inverse();
    maps_[index_of(s)] = std::move(m);
  }

  Rational eval(const Word& w, Rational x) const {
    const auto& syl = w.syllables();
    for (auto it = syl.rbegin(); it != syl.rend(); ++it) {
      const auto& m = it->elem > 0 ? maps_[index_of(it->side)] : inverses_[index_of(it->side)];
      for (Integer k = abs(it->elem); k > 0; --k) x = m(x);
    }
    return x;
  }

  Rational orbit(const Word& w) const { return eval(w, Rational(0)); }

  PLMap map(const Word& w) const {
    PLMap out;
    for (const auto& s : w.syllables()) {
      const auto& m = s.elem > 0 ? maps_[index_of(s.side)] : inverses_[index_of(s.side)];
      for (Integer k = abs(s.elem); k > 0; --k) out = out.compose(m);
    }
    return out;
  }

  // The same action with one factor conjugated by phi.
  PartialAction conjugated(Side s, const PLMap& phi) const {
    PartialAction out = *this;
    out.set_generator(s, maps_[index_of(s)].conjugate_by(phi));
    return out;
  }

 private:
  FreeProduct group_;
  std::array<PLMap, 2> maps_;
  std::array<PLMap, 2> inverses_;
};

// u·C == v·C.
inline bool same_left_coset(const QuotientGraph& c, const Word& u, const Word& v) {
  return c.contains(c.group().multiply(c.group().invert(u), v));
}

inline int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// Shared ball domains: building the multiplication table is quadratic.
inline DomainRef ball_domain(const FreeProduct& group, std::size_t radius) {
  static std::mutex mu;
  static std::vector<std::pair<FreeProduct, std::map<std::size_t, DomainRef>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = std::find_if(cache.begin(), cache.end(), [&](const auto& e) { return e.first == group; });
  if (it == cache.end()) {
    cache.emplace_back(group, std::map<std::size_t, DomainRef>{});
    it = std::prev(cache.end());
  }
  auto& slot = it->second[radius];
  if (!slot) slot = ConeDomain::ball(group, radius);
  return slot;
}

// The first cone on the target domain that agrees with c wherever both are defined.
inline TruncatedCone extend_to_domain(const TruncatedCone& c, const DomainRef& target) {
  const auto& d = *target;
  bool covered = true;
  for (const auto& w : d.elements())
    if (!c.domain->find(w)) covered = false;
  if (covered) return restrict_cone(c, target);
  EnumerationOptions opt;
  opt.limit = 1;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (auto s = c.lookup(d.word(i))) opt.pins[i] = *s;
  auto found = enumerate_cones(target, c.relative_to, opt);
  if (found.empty()) throw DomainError("the cone has no extension to the requested domain");
  return found.front();
}

// Anchors the cosets of B(m) at consecutive integers in cone order, the
// identity coset at 0, and interpolates each generator on the anchors.
inline PartialAction realize(const SignOracle& sign, const QuotientGraph& c, std::size_t m) {
  const auto& grp = c.group();
  PartialAction d(grp);
  auto cmp = [&](const Word& u, const Word& v) {
    auto s = sign(grp.multiply(grp.invert(u), v));
    if (!s) throw DomainError("sign data does not cover " + grp.format(u) + " vs " + grp.format(v));
    return *s;
  };
  auto ball = grp.ball(m);
  std::vector<Word> reps;
  for (const auto& w : ball) {
    std::size_t lo = 0, hi = reps.size();
    bool found = false;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      int s = cmp(reps[mid], w);
      if (s == 0) {
        found = true;
        break;
      }
      if (s > 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (!found) reps.insert(reps.begin() + static_cast<std::ptrdiff_t>(lo), w);
  }
  std::unordered_map<Word, Rational, WordHash> anchor;
  std::size_t base = 0;
  for (std::size_t k = 0; k < reps.size(); ++k)
    if (cmp(reps[k], grp.identity()) == 0) base = k;
  for (const auto& w : ball) {
    std::optional<std::size_t> k;
    for (std::size_t j = 0; j < reps.size(); ++j) {
      int s = cmp(reps[j], w);
      if (s == 0 && !k) {
        k = j;
        if (!same_left_coset(c, reps[j], w))
          throw DomainError("sign data puts " + grp.format(w) + " in the coset of " + grp.format(reps[j]));
      } else if (s != (k ? -1 : 1)) {
        throw DomainError("sign data is not a coset order near " + grp.format(w));
      }
    }
    anchor.emplace(w, Rational(static_cast<long long>(*k) - static_cast<long long>(base)));
  }
  Rational lower = Rational(-static_cast<long long>(base) - 1);
  Rational upper = Rational(static_cast<long long>(reps.size() - base));
  for (Side side : {Side::left, Side::right}) {
    if (grp.factor(side).is_trivial()) continue;
    Word s = grp.letter(side, Integer(1));
    std::map<Rational, Rational> pairs;
    for (const auto& w : ball) {
      auto sw = anchor.find(grp.multiply(s, w));
      if (sw == anchor.end()) continue;
      auto [it, fresh] = pairs.emplace(anchor.at(w), sw->second);
      if (!fresh && it->second != sw->second) throw DomainError("sign data is not left-invariant");
    }
    std::vector<PLMap::Point> pts{{lower, lower}};
    for (const auto& [x, y] : pairs) {
      if (y <= pts.back().second) throw DomainError("sign data is not left-invariant");
      pts.emplace_back(x, y);
    }
    pts.emplace_back(upper, upper);
    d.set_generator(side, PLMap(std::move(pts)));
  }
  for (const auto& w : ball)
    if (d.orbit(w) != anchor.at(w)) throw std::logic_error("realization missed the anchor of " + grp.format(w));
  return d;
}

inline PartialAction realize(const TruncatedCone& c, std::size_t m) {
  auto v = check_axioms(c);
  if (!v.empty()) throw DomainError("cone fails the " + v.front().kind + " axiom");
  return realize(oracle_of(c), *c.relative_to, m);
}

// D(u)(0) < D(v)(0) exactly when uC < vC, for all u, v in B(m).
inline bool realization_faithful(const PartialAction& d, const SignOracle& sign, std::size_t m) {
  const auto& grp = d.group();
  auto ball = grp.ball(m);
  std::vector<Rational> at;
  for (const auto& w : ball) at.push_back(d.orbit(w));
  for (std::size_t i = 0; i < ball.size(); ++i)
    for (std::size_t j = 0; j < ball.size(); ++j) {
      auto s = sign(grp.multiply(grp.invert(ball[i]), ball[j]));
      if (!s || *s != sign_of(at[j] - at[i])) return false;
    }
  return true;
}

struct GhChoice {
  Word g;
  Word h;
};

// g in X_G, h in X_H moving lambda·C and keeping g^e·lambda·C, h^d·lambda·C apart.
inline std::optional<GhChoice> find_gh(const QuotientGraph& c, const Word& lambda) {
  const auto& grp = c.group();
  auto moved = [&](const Word& x) { return grp.multiply(x, lambda); };
  for (const auto& g : grp.factor_generators(Side::left)) {
    if (same_left_coset(c, moved(g), lambda)) continue;
    for (const auto& h : grp.factor_generators(Side::right)) {
      if (same_left_coset(c, moved(h), lambda)) continue;
      bool apart = true;
      for (const auto& x : {g, grp.invert(g)})
        for (const auto& y : {h, grp.invert(h)})
          if (same_left_coset(c, moved(x), moved(y))) apart = false;
      if (apart) return GhChoice{g, h};
    }
  }
  return std::nullopt;
}

struct PerturbResult {
  Word gamma;
  TruncatedCone c_prime;
  PLMap phi;
  PartialAction perturbed;
  Word lambda;
  Word lambda_n_plus;
  Word lambda_n_minus;
  Word g;
  Word h;
  Side conjugated_side = Side::right;
  bool swapped = false;
  Rational x0, x1, y1, y0;
  Rational at_lambda, at_h_lambda, at_g_lambda;
};

// The perturbation of a realization d of the sign data, faithful on B(n+2):
// conjugate one factor by phi so that g·lambda and h·lambda trade places while
// every element of B(n+1) keeps its orbit point.
inline PerturbResult perturb(const PartialAction& d, const SignOracle& sign, const SubgroupRef& c,
                             const std::vector<Word>& y, std::size_t n) {
  const auto& grp = c->group();
  for (Side s : {Side::left, Side::right})
    if (grp.factor(s).is_trivial()) throw DomainError("perturbation needs two nontrivial factors");
  for (const auto& w : y) {
    if (grp.length(w) > n) throw DomainError(grp.format(w) + " lies outside the radius-" + std::to_string(n) + " ball");
    auto s = sign(w);
    if (!s || *s <= 0) throw DomainError(grp.format(w) + " is not positive");
  }
  for (const auto& w : grp.ball(n + 2))
    if (auto s = sign(w); !s || *s != sign_of(d.orbit(w)))
      throw DomainError("the realization does not reproduce the sign of " + grp.format(w));

  PerturbResult r{Word{}, TruncatedCone{}, PLMap{}, d, Word{}, Word{}, Word{}, Word{}, Word{}};
  auto x = grp.generators();
  r.lambda = maximal_in_ball(sign, *c, x, n + 1).first;
  std::tie(r.lambda_n_plus, r.lambda_n_minus) = maximal_in_ball(sign, *c, x, n);
  auto gh = find_gh(*c, r.lambda);
  if (!gh)
    throw DomainError("the coset of " + grp.format(r.lambda) + " is exceptional; enlarge the radius");
  auto at = [&](const Word& w) { return d.orbit(grp.multiply(w, r.lambda)); };
  r.at_lambda = d.orbit(r.lambda);
  r.g = at(gh->g) < r.at_lambda ? grp.invert(gh->g) : gh->g;
  r.h = at(gh->h) < r.at_lambda ? grp.invert(gh->h) : gh->h;
  if (at(r.g) < at(r.h)) {
    std::swap(r.g, r.h);
    r.swapped = true;
  }
  r.conjugated_side = r.h.front().side;
  r.at_h_lambda = at(r.h);
  r.at_g_lambda = at(r.g);
  if (!(r.at_lambda < r.at_h_lambda && r.at_h_lambda < r.at_g_lambda))
    throw std::logic_error("lambda, h·lambda, g·lambda are not in increasing order");

  r.x0 = (r.at_lambda + r.at_h_lambda) / 2;
  r.x1 = (r.x0 + r.at_h_lambda) / 2;
  r.y1 = r.at_g_lambda + Rational(1, 2);
  r.y0 = r.at_g_lambda + 1;
  r.phi = PLMap({{r.x0, r.x0}, {r.x1, (r.y1 + r.y0) / 2}, {r.y0, r.y0}});
  r.perturbed = d.conjugated(r.conjugated_side, r.phi);
  const auto& dp = r.perturbed;
  r.gamma = grp.multiply(grp.invert(grp.multiply(r.h, r.lambda)), grp.multiply(r.g, r.lambda));

  if (r.phi(Rational(0)) != 0 || r.phi.inverse()(Rational(0)) != 0) throw std::logic_error("phi moves 0");
  Rational lo = d.orbit(r.lambda_n_minus), hi = d.orbit(r.lambda_n_plus);
  for (Side s : {Side::left, Side::right})
    if (!d.generator(s).agrees_on(dp.generator(s), lo, hi))
      throw std::logic_error("generator maps disagree on the ball interval");
  for (const auto& w : grp.ball(n + 1))
    if (dp.orbit(w) != d.orbit(w)) throw std::logic_error("perturbation moved the orbit point of " + grp.format(w));
  if (!(dp.orbit(grp.multiply(r.g, r.lambda)) < dp.orbit(grp.multiply(r.h, r.lambda))))
    throw std::logic_error("perturbation did not flip h·lambda and g·lambda");
  for (const auto& w : c->generators())
    if (dp.orbit(w) != 0)
      throw DomainError("generator " + grp.format(w) + " of C leaves the perturbed stabilizer; enlarge the radius");

  std::size_t radius = std::max<std::size_t>(n, grp.length(r.gamma).convert_to<std::size_t>());
  auto domain = ball_domain(grp, radius);
  TruncatedCone p{domain, c, std::vector<int>(domain->size())};
  std::vector<Word> stab;
  bool residual = false;
  for (std::size_t i = 0; i < domain->size(); ++i) {
    p.sign[i] = sign_of(dp.orbit(domain->word(i)));
    if (p.sign[i] != 0) continue;
    stab.push_back(domain->word(i));
    if (!c->contains(domain->word(i))) residual = true;
  }
  if (residual) {
    auto sd = std::make_shared<const ConeDomain>(grp, stab);
    EnumerationOptions opt;
    opt.limit = 1;
    auto p0 = enumerate_cones(sd, c, opt);
    if (p0.empty()) throw DomainError("no relative cone on the perturbed stabilizer");
    r.c_prime = extend_cone(p, p0.front());
  } else {
    r.c_prime = p;
  }

  auto v = check_axioms(r.c_prime);
  if (!v.empty()) throw std::logic_error("perturbed cone fails the " + v.front().kind + " axiom");
  for (const auto& w : y)
    if (r.c_prime.at(w) != *sign(w)) throw std::logic_error("perturbed cone changed the sign of " + grp.format(w));
  if (r.c_prime.at(r.gamma) != -1) throw std::logic_error("perturbed cone does not make gamma negative");
  if (auto s = sign(r.gamma); s && *s != 1) throw std::logic_error("gamma is not positive");
  return r;
}

struct Witness {
  TruncatedCone c;
  TruncatedCone c_prime;
  Word gamma;
  std::vector<Word> y;
  std::size_t radius = 0;
  PartialAction realization;
  PerturbResult detail;
};

// Positive representatives of Y off C: negatives are inverted, C-elements dropped.
inline std::vector<Word> normalize_agreement_set(const TruncatedCone& c, const std::vector<Word>& y) {
  const auto& grp = c.domain->group();
  std::vector<Word> out;
  for (const auto& w : y) {
    auto s = c.lookup(w);
    if (!s) throw DomainError(grp.format(w) + " is outside the cone domain");
    if (*s == 0) continue;
    out.push_back(*s > 0 ? w : grp.invert(w));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// A second cone agreeing with c on Y and disagreeing at gamma.
inline Witness nonisolation_witness(const TruncatedCone& c, const std::vector<Word>& y,
                                    std::optional<std::size_t> n = std::nullopt) {
  const auto& grp = c.domain->group();
  for (Side s : {Side::left, Side::right})
    if (grp.factor(s).is_trivial()) throw DomainError("non-isolation needs two nontrivial factors");
  auto v = check_axioms(c);
  if (!v.empty()) throw DomainError("cone fails the " + v.front().kind + " axiom");
  auto ys = normalize_agreement_set(c, y);
  std::size_t radius = n.value_or(1);
  if (!n)
    for (const auto& w : ys) radius = std::max(radius, grp.length(w).convert_to<std::size_t>());
  auto extended = extend_to_domain(c, ball_domain(grp, 2 * radius + 4));
  auto d = realize(oracle_of(extended), *c.relative_to, radius + 2);
  auto r = perturb(d, oracle_of(extended), c.relative_to, ys, radius);
  return Witness{extended, r.c_prime, r.gamma, ys, radius, d, r};
}

}  // namespace kurosh
