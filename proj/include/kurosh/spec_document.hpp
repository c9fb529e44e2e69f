#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kurosh/kurosh.hpp"

namespace kurosh {

struct SpecOptions {
  std::size_t radius = 2;
  std::size_t window = 1;
  std::uint64_t seed = 0;
};

// Two factor groups, subgroup generators and default options, read from JSON.
struct SpecDocument {
  FreeProduct group;
  std::vector<Word> subgroup;
  SpecOptions options;
};

inline FactorGroup parse_factor(const nlohmann::json& j) {
  auto name = j.at("name").get<std::string>();
  auto kind = j.at("kind").get<std::string>();
  const auto& names = j.at("generator_names");
  if (!names.is_object()) throw DomainError("generator_names of " + name + " must map names to elements");
  if (kind == "integer") {
    if (names.size() != 1) throw DomainError("integer factor " + name + " needs exactly one generator name");
    if (names.begin().value().get<long long>() != 1)
      throw DomainError("the generator of integer factor " + name + " must map to 1");
    return FactorGroup::integer(name, names.begin().key());
  }
  if (kind != "finite") throw DomainError("unknown factor kind " + kind);
  auto table = j.at("table").get<std::vector<std::vector<std::size_t>>>();
  std::vector<FactorGroup::Generator> gens;
  for (const auto& [k, v] : names.items()) gens.emplace_back(k, Integer(v.get<long long>()));
  return FactorGroup::finite(name, std::move(table), std::move(gens));
}

inline std::vector<Word> parse_word_list(const FreeProduct& g, const std::vector<std::string>& lits) {
  std::vector<Word> out;
  for (const auto& l : lits) out.push_back(g.parse(l));
  return out;
}

// Generators separated by commas, each a word literal.
inline std::vector<Word> parse_generator_text(const FreeProduct& g, const std::string& text) {
  std::vector<Word> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(g.parse(item));
  return out;
}

// A factor subgroup given by generators that are letters of that factor.
inline FactorSubgroup parse_factor_subgroup(const FreeProduct& g, Side side, const std::string& text) {
  const auto& f = g.factor(side);
  std::vector<Integer> gens;
  for (const auto& w : parse_generator_text(g, text)) {
    if (w.is_identity()) continue;
    if (w.syllable_length() != 1 || w.front().side != side)
      throw DomainError(g.format(w) + " is not an element of " + f.name());
    gens.push_back(w.front().elem);
  }
  return FactorSubgroup::generated(f, gens);
}

inline SpecDocument parse_spec(const nlohmann::json& j) {
  const auto& factors = j.at("factors");
  if (!factors.is_array() || factors.size() != 2) throw DomainError("a spec needs exactly two factors");
  SpecDocument doc{FreeProduct(parse_factor(factors[0]), parse_factor(factors[1])), {}, {}};
  if (j.contains("subgroup")) doc.subgroup = parse_word_list(doc.group, j.at("subgroup").get<std::vector<std::string>>());
  if (j.contains("options")) {
    const auto& o = j.at("options");
    doc.options.radius = o.value("radius", doc.options.radius);
    doc.options.window = o.value("window", doc.options.window);
    doc.options.seed = o.value("seed", doc.options.seed);
  }
  return doc;
}

inline SpecDocument load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open spec " + path);
  nlohmann::json j;
  try {
    in >> j;
    return parse_spec(j);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("malformed spec " + path + ": " + e.what());
  }
}

}  // namespace kurosh
