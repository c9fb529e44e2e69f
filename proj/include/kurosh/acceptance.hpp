#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "kurosh/kurosh.hpp"

namespace kurosh::acceptance {

struct Outcome {
  int number = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

inline FreeProduct free_group() { return FreeProduct(FactorGroup::integer("G", "a"), FactorGroup::integer("H", "b")); }

inline SubgroupRef subgroup(const FreeProduct& g, const std::vector<std::string>& lits) {
  std::vector<Word> ws;
  for (const auto& l : lits) ws.push_back(g.parse(l));
  return build_core_graph(g, ws);
}

inline Word random_word(const FreeProduct& g, Lcg& rng, std::size_t syllables, int max_exp) {
  std::vector<Syllable> raw;
  Side side = rng.below(2) ? Side::right : Side::left;
  for (std::size_t i = 0; i < syllables; ++i, side = other(side)) {
    const auto& f = g.factor(side);
    if (f.is_trivial()) continue;
    Integer e;
    if (f.is_integer()) {
      auto k = rng.between(1, max_exp);
      e = rng.below(2) ? Integer(k) : Integer(-k);
    } else {
      e = Integer(rng.between(1, static_cast<std::int64_t>(f.order()) - 1));
    }
    raw.push_back({side, e});
  }
  return g.normalize(raw);
}

inline std::vector<Word> random_gens(const FreeProduct& g, Lcg& rng) {
  std::vector<Word> out;
  std::size_t n = 1 + rng.below(3);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_word(g, rng, 1 + rng.below(4), 2));
  return out;
}

// Pord(Z) has two points at every radius.
inline std::string integer_cone_counts() {
  FreeProduct z(FactorGroup::integer("G", "a"), FactorGroup::trivial("H"));
  auto c = trivial_subgroup(z);
  std::string counts;
  bool ok = true;
  for (std::size_t r = 1; r <= 8; ++r) {
    auto n = enumerate_cones(ConeDomain::ball(z, r), c).size();
    counts += (r > 1 ? "," : "") + std::to_string(n);
    ok = ok && n == 2;
  }
  if (!ok) throw std::runtime_error("counts " + counts);
  return "counts " + counts;
}

// Cones relative to <b> on the <a>-balls: one per direction of a.
inline std::string cyclic_relative_counts() {
  auto g = free_group();
  auto c = subgroup(g, {"b"});
  std::string counts;
  bool ok = true;
  for (std::size_t r = 1; r <= 3; ++r) {
    auto d = std::make_shared<const ConeDomain>(g, g.ball({g.parse("a"), g.parse("a^-1")}, r));
    auto total = enumerate_cones(d, c).size();
    std::size_t up = 0, down = 0;
    for (int s : {1, -1}) {
      EnumerationOptions opt;
      opt.pins[*d->find(g.parse("a"))] = s;
      (s > 0 ? up : down) = enumerate_cones(d, c, opt).size();
    }
    counts += (r > 1 ? " " : "") + std::to_string(total) + "=" + std::to_string(up) + "+" + std::to_string(down);
    ok = ok && total == 2 && up == 1 && down == 1;
  }
  if (!ok) throw std::runtime_error("counts " + counts);
  return "total=up+down per radius: " + counts;
}

inline std::string kurosh_rank_of_index_two() {
  auto g = free_group();
  auto c = subgroup(g, {"a^2", "b", "a b a^-1"});
  auto k = kurosh_rank(*c);
  std::vector<Word> reps;
  for (const auto& w : g.ball(4))
    if (std::none_of(reps.begin(), reps.end(), [&](const Word& r) { return c->same_coset(r, w); })) reps.push_back(w);
  std::size_t nielsen_schreier = 1 + reps.size() * (2 - 1);
  std::string detail = "t=" + std::to_string(k.t) + " graph_rank=" + std::to_string(k.graph_rank) +
                       " total=" + std::to_string(k.total) + " index=" + std::to_string(reps.size());
  if (k.t != 3 || k.graph_rank != 0 || k.total != 3 || nielsen_schreier != 3) throw std::runtime_error(detail);
  return detail;
}

inline std::string intersection_theorem(std::uint64_t seed) {
  auto g = free_group();
  auto c = subgroup(g, {"a^2", "b", "a b a^-1"});
  SubfactorPair p{FactorSubgroup::cyclic(1), FactorSubgroup::cyclic(2)};
  auto d = theorem_data(*c);
  auto gens = intersection_generators(d, *c, p);
  std::set<Word> got(gens.words.begin(), gens.words.end());
  std::set<Word> want{g.parse("a^2"), g.parse("b^2"), g.parse("a b^2 a^-1")};
  if (got != want) throw std::runtime_error("unexpected generating set");
  auto generated = build_core_graph(g, gens.words);
  std::size_t checked = 0;
  for (const auto& w : g.ball(6)) {
    bool in_both = c->contains(w) && in_subfactor_pair(w, p);
    if (in_both != generated->contains(w)) throw std::runtime_error("inclusion fails at " + g.format(w));
    checked += in_both;
  }
  Lcg rng(seed);
  for (int trial = 0; trial < 100; ++trial) {
    Word x;
    std::size_t len = 1 + rng.below(6);
    for (std::size_t i = 0; i < len; ++i) {
      const Word& y = gens.words[rng.below(gens.words.size())];
      x = g.multiply(x, rng.below(2) ? y : g.invert(y));
    }
    auto r = rewrite_in_generators(*c, d, gens, p, x);
    if (evaluate_product(g, gens.words, r.product) != x) throw std::runtime_error("round trip fails at " + g.format(x));
  }
  return "{a^2, b^2, a b^2 a^-1}; " + std::to_string(checked) + " ball elements in both; 100 round trips";
}

inline std::string kurosh_bound(std::uint64_t seed) {
  std::vector<FreeProduct> groups{free_group(),
                                  FreeProduct(FactorGroup::cyclic("G", 2, "a"), FactorGroup::cyclic("H", 3, "b")),
                                  FreeProduct(FactorGroup::cyclic("G", 4, "a"), FactorGroup::integer("H", "b"))};
  Lcg rng(seed);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& g = groups[trial % groups.size()];
    auto c = build_core_graph(g, random_gens(g, rng));
    auto d = theorem_data(*c);
    std::vector<Integer> gens[2];
    for (const auto& w : d.f0)
      for (const auto& s : w.syllables()) gens[index_of(s.side)].push_back(s.elem);
    for (Side s : {Side::left, Side::right}) {
      const auto& f = g.factor(s);
      if (rng.below(2)) continue;
      gens[index_of(s)].push_back(f.is_integer() ? Integer(rng.between(1, 6)) : Integer(rng.below(f.order())));
    }
    SubfactorPair p{FactorSubgroup::generated(g.factor(Side::left), gens[0]),
                    FactorSubgroup::generated(g.factor(Side::right), gens[1])};
    auto inter = build_core_graph(g, intersection_generators(d, *c, p).words);
    if (!kurosh_bound_check(*c, *inter)) throw std::runtime_error("bound fails in trial " + std::to_string(trial));
  }
  return "200 trials";
}

inline std::string xi_finiteness() {
  auto f2 = free_group();
  FreeProduct mod(FactorGroup::cyclic("G", 2, "a"), FactorGroup::cyclic("H", 3, "b"));
  std::vector<SubgroupRef> fixtures{subgroup(f2, {"a^2", "b", "a b a^-1"}), subgroup(f2, {"b"}),
                                    subgroup(mod, {"a b"})};
  std::string detail;
  for (const auto& c : fixtures) {
    const auto& g = c->group();
    auto comp = xi_complement(*c);
    for (const auto& w : g.ball(6)) {
      bool listed = std::any_of(comp.begin(), comp.end(), [&](const Word& x) { return c->same_coset(w, x); });
      if (listed == in_xi(*c, w)) throw std::runtime_error("disagreement at " + g.format(w));
    }
    detail += (detail.empty() ? "" : ",") + std::to_string(comp.size());
  }
  return "complement sizes " + detail;
}

inline std::string nonisolation() {
  auto g = free_group();
  auto c = trivial_subgroup(g);
  auto cones = enumerate_cones(ball_domain(g, 2), c);
  auto y = g.ball(1);
  for (const auto& cone : cones) {
    auto w = nonisolation_witness(cone, y);
    for (const auto& v : y)
      if (w.c_prime.at(v) != cone.at(v)) throw std::runtime_error("agreement fails at " + g.format(v));
    if (w.c_prime.at(w.gamma) == w.c.at(w.gamma)) throw std::runtime_error("no disagreement at gamma");
    EnumerationOptions opt;
    for (std::size_t i = 0; i < w.c_prime.sign.size(); ++i) opt.pins[i] = w.c_prime.sign[i];
    auto found = enumerate_cones(w.c_prime.domain, c, opt);
    if (found.size() != 1 || found.front().sign != w.c_prime.sign)
      throw std::runtime_error("perturbed cone is not enumerated");
  }
  return std::to_string(cones.size()) + " cones, all witnessed";
}

inline std::string realization_checks() {
  auto g = free_group();
  auto triv = trivial_subgroup(g);
  MagnusOrder m(g);
  EnumerationOptions first;
  first.limit = 1;
  std::vector<TruncatedCone> cones{
      cone_from_rule(ball_domain(g, 6), triv, [&](const Word& w) { return m.sign(w); }),
      enumerate_cones(ball_domain(g, 6), subgroup(g, {"b"}), first).front(),
      enumerate_cones(ball_domain(g, 6), subgroup(g, {"a b a^-1 b^-1"}), first).front()};
  FreeProduct z(FactorGroup::integer("G", "a"), FactorGroup::trivial("H"));
  auto zc = cone_from_rule(ball_domain(z, 6), trivial_subgroup(z), [](const Word& w) { return w.front().elem > 0 ? 1 : -1; });
  if (!realization_faithful(realize(zc, 3), oracle_of(zc), 3)) throw std::runtime_error("integer realization");
  std::size_t agreements = 0;
  for (const auto& c : cones) {
    auto d = realize(c, 3);
    if (!realization_faithful(d, oracle_of(c), 3)) throw std::runtime_error("realization is not faithful");
    auto w = nonisolation_witness(c, g.ball(1));
    const auto& r = w.detail;
    Rational lo = w.realization.orbit(r.lambda_n_minus), hi = w.realization.orbit(r.lambda_n_plus);
    for (Side s : {Side::left, Side::right})
      if (!w.realization.generator(s).agrees_on(r.perturbed.generator(s), lo, hi))
        throw std::runtime_error("generator maps disagree on the ball interval");
    for (const auto& v : g.ball(w.radius + 1)) {
      if (r.perturbed.orbit(v) != w.realization.orbit(v)) throw std::runtime_error("orbit moved at " + g.format(v));
      ++agreements;
    }
    if (r.phi(Rational(0)) != 0) throw std::runtime_error("phi moves 0");
  }
  return std::to_string(cones.size() + 1) + " fixtures, " + std::to_string(agreements) + " orbit agreements";
}

inline std::string folding_confluence(std::uint64_t seed) {
  std::vector<FreeProduct> groups{free_group(),
                                  FreeProduct(FactorGroup::cyclic("G", 2, "a"), FactorGroup::cyclic("H", 3, "b"))};
  Lcg rng(seed);
  for (int trial = 0; trial < 50; ++trial) {
    const auto& g = groups[trial % groups.size()];
    auto gens = random_gens(g, rng);
    gens.push_back(random_word(g, rng, 1 + rng.below(4), 2));
    auto moved = gens;
    for (std::size_t i = moved.size(); i > 1; --i) std::swap(moved[i - 1], moved[rng.below(i)]);
    std::size_t i = rng.below(moved.size()), j = rng.below(moved.size());
    if (i != j) moved[i] = g.multiply(moved[i], rng.below(2) ? moved[j] : g.invert(moved[j]));
    if (rng.below(2)) moved[j] = g.invert(moved[j]);
    if (build_core_graph(g, gens)->canonical_encoding() != build_core_graph(g, moved)->canonical_encoding())
      throw std::runtime_error("graphs differ in trial " + std::to_string(trial));
  }
  return "50 trials";
}

inline std::vector<Outcome> run_all(std::uint64_t seed = 0) {
  std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
      {"Pord(Z) count", integer_cone_counts},
      {"relative cyclic count", cyclic_relative_counts},
      {"Kurosh rank", kurosh_rank_of_index_two},
      {"intersection theorem", [seed] { return intersection_theorem(seed); }},
      {"Kurosh bound", [seed] { return kurosh_bound(seed); }},
      {"Xi finiteness", xi_finiteness},
      {"non-isolation", nonisolation},
      {"realization faithfulness", realization_checks},
      {"folding confluence", [seed] { return folding_confluence(seed); }},
  };
  std::vector<Outcome> out;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    o.number = static_cast<int>(i + 1);
    o.title = criteria[i].first;
    auto start = std::chrono::steady_clock::now();
    try {
      o.detail = criteria[i].second();
      o.pass = true;
    } catch (const std::exception& e) {
      o.detail = e.what();
    }
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace kurosh::acceptance
