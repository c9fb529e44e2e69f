#pragma once

#include <string>
#include <vector>

#include "kurosh/kurosh.hpp"

namespace fixtures {

using namespace kurosh;

inline FreeProduct free_group() {
  return FreeProduct(FactorGroup::integer("G", "a"), FactorGroup::integer("H", "b"));
}

inline FreeProduct z2_z3() {
  return FreeProduct(FactorGroup::cyclic("G", 2, "a"), FactorGroup::cyclic("H", 3, "b"));
}

inline FreeProduct z2_z2() {
  return FreeProduct(FactorGroup::cyclic("G", 2, "a"), FactorGroup::cyclic("H", 2, "b"));
}

inline FreeProduct z_only() {
  return FreeProduct(FactorGroup::integer("G", "a"), FactorGroup::trivial("H"));
}

// S3 as permutations of {0,1,2}: 0 id, 1 (01), 2 (12), 3 (02), 4 (012), 5 (021).
inline FactorGroup s3(const std::string& s, const std::string& t) {
  std::vector<std::vector<std::size_t>> table = {
      {0, 1, 2, 3, 4, 5}, {1, 0, 4, 5, 2, 3}, {2, 5, 0, 4, 3, 1},
      {3, 4, 5, 0, 1, 2}, {4, 3, 1, 2, 5, 0}, {5, 2, 3, 1, 0, 4}};
  return FactorGroup::finite("S3", table, {{s, Integer(1)}, {t, Integer(2)}});
}

inline std::vector<Word> words(const FreeProduct& g, const std::vector<std::string>& lits) {
  std::vector<Word> out;
  for (const auto& l : lits) out.push_back(g.parse(l));
  return out;
}

inline SubgroupRef subgroup(const FreeProduct& g, const std::vector<std::string>& lits) {
  return build_core_graph(g, words(g, lits));
}

// Random reduced word with the given number of syllables.
inline Word random_word(const FreeProduct& g, Lcg& rng, std::size_t syllables, int max_exp = 3) {
  std::vector<Syllable> raw;
  Side side = rng.below(2) ? Side::right : Side::left;
  for (std::size_t i = 0; i < syllables; ++i) {
    const auto& f = g.factor(side);
    if (f.is_trivial()) {
      side = other(side);
      continue;
    }
    Integer e;
    if (f.is_integer()) {
      auto k = rng.between(1, max_exp);
      e = rng.below(2) ? Integer(k) : Integer(-k);
    } else {
      e = Integer(rng.between(1, static_cast<std::int64_t>(f.order()) - 1));
    }
    raw.push_back({side, e});
    side = other(side);
  }
  return g.normalize(raw);
}

}  // namespace fixtures
