#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kurosh/core.hpp"

namespace kurosh {

enum class FactorKind { finite, integer };

// A free factor: either a finite group given by its multiplication table
// (index 0 is the identity) or the infinite cyclic group.
class FactorGroup {
 public:
  using Generator = std::pair<std::string, Integer>;

  static FactorGroup integer(std::string name, std::string generator) {
    FactorGroup f;
    f.name_ = std::move(name);
    f.kind_ = FactorKind::integer;
    f.generators_.emplace_back(std::move(generator), Integer(1));
    f.validate();
    return f;
  }

  static FactorGroup finite(std::string name, std::vector<std::vector<std::size_t>> table,
                            std::vector<Generator> generators) {
    FactorGroup f;
    f.name_ = std::move(name);
    f.kind_ = FactorKind::finite;
    f.table_ = std::move(table);
    f.generators_ = std::move(generators);
    f.validate();
    return f;
  }

  // Z/n with the given generator name mapped to 1.
  static FactorGroup cyclic(std::string name, std::size_t order, std::string generator) {
    if (order == 0) throw DomainError("cyclic factor needs positive order");
    std::vector<std::vector<std::size_t>> table(order, std::vector<std::size_t>(order));
    for (std::size_t i = 0; i < order; ++i)
      for (std::size_t j = 0; j < order; ++j) table[i][j] = (i + j) % order;
    std::vector<Generator> gens;
    if (order > 1) gens.emplace_back(std::move(generator), Integer(1));
    return finite(std::move(name), std::move(table), std::move(gens));
  }

  static FactorGroup trivial(std::string name) {
    return finite(std::move(name), {{0}}, {});
  }

  const std::string& name() const { return name_; }
  FactorKind kind() const { return kind_; }
  bool is_integer() const { return kind_ == FactorKind::integer; }
  bool is_trivial() const { return kind_ == FactorKind::finite && table_.size() == 1; }
  std::size_t order() const { return table_.size(); }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  const std::vector<Generator>& generators() const { return generators_; }

  bool valid_element(const Integer& x) const {
    if (is_integer()) return true;
    return x >= 0 && x < Integer(table_.size());
  }

  void require_element(const Integer& x) const {
    if (!valid_element(x)) throw DomainError("element " + x.str() + " out of range in factor " + name_);
  }

  static bool is_identity(const Integer& x) { return x.is_zero(); }

  Integer multiply(const Integer& x, const Integer& y) const {
    if (is_integer()) return x + y;
    return Integer(table_[to_index(x)][to_index(y)]);
  }

  Integer invert(const Integer& x) const {
    if (is_integer()) return -x;
    return Integer(inverse_[to_index(x)]);
  }

  Integer power(const Integer& x, const Integer& k) const {
    if (is_integer()) return x * k;
    Integer n = k % Integer(order());
    if (n < 0) n += Integer(order());
    Integer result = 0;
    for (std::size_t i = 0; i < to_index(n); ++i) result = multiply(result, x);
    return result;
  }

  // Generators and their inverses, without the identity, sorted and deduplicated.
  std::vector<Integer> symmetric_generators() const {
    std::vector<Integer> out;
    for (const auto& [n, e] : generators_) {
      if (!is_identity(e)) {
        out.push_back(e);
        out.push_back(invert(e));
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Word length of x over the symmetric generating set.
  Integer length(const Integer& x) const {
    if (is_integer()) return abs(x);
    return Integer(distance_[to_index(x)]);
  }

  std::optional<Integer> element_of(const std::string& token_name) const {
    for (const auto& [n, e] : generators_)
      if (n == token_name) return e;
    return std::nullopt;
  }

  // Canonical token sequence printing x (x non-identity).
  std::vector<std::string> tokens(const Integer& x) const {
    if (is_integer()) {
      const std::string& a = generators_.front().first;
      if (x == 1) return {a};
      return {a + "^" + x.str()};
    }
    return spelling_[to_index(x)];
  }

 private:
  FactorGroup() = default;

  void validate() {
    if (name_.empty()) throw DomainError("factor needs a name");
    if (is_integer()) {
      if (generators_.size() != 1) throw DomainError("integer factor needs exactly one generator");
      return;
    }
    const std::size_t n = table_.size();
    if (n == 0) throw DomainError("finite factor " + name_ + " has an empty table");
    for (const auto& row : table_) {
      if (row.size() != n) throw DomainError("table of " + name_ + " is not square");
      std::vector<bool> seen(n, false);
      for (auto v : row) {
        if (v >= n || seen[v]) throw DomainError("table of " + name_ + " is not a Latin square");
        seen[v] = true;
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<bool> seen(n, false);
      for (std::size_t i = 0; i < n; ++i) {
        if (seen[table_[i][j]]) throw DomainError("table of " + name_ + " is not a Latin square");
        seen[table_[i][j]] = true;
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (table_[0][i] != i || table_[i][0] != i)
        throw DomainError("element 0 of " + name_ + " is not the identity");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (table_[table_[i][j]][k] != table_[i][table_[j][k]])
            throw DomainError("table of " + name_ + " is not associative");
    inverse_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (table_[i][j] == 0) inverse_[i] = j;
    for (const auto& [nm, e] : generators_) require_element(e);
    compute_spelling();
  }

  // Shortest spelling of each element by tokens name^k, found breadth first.
  void compute_spelling() {
    const std::size_t n = table_.size();
    std::vector<std::pair<std::string, std::size_t>> moves;
    for (const auto& [nm, e] : generators_) {
      std::size_t g = to_index(e);
      std::size_t p = g;
      for (std::size_t k = 1; p != 0; ++k) {
        moves.emplace_back(k == 1 ? nm : nm + "^" + std::to_string(k), p);
        p = table_[p][g];
      }
    }
    spelling_.assign(n, {});
    std::vector<bool> seen(n, false);
    seen[0] = true;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (const auto& [tok, m] : moves) {
        std::size_t y = table_[x][m];
        if (seen[y]) continue;
        seen[y] = true;
        spelling_[y] = spelling_[x];
        spelling_[y].push_back(tok);
        queue.push_back(y);
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!seen[i]) throw DomainError("generators of " + name_ + " do not generate the factor");

    distance_.assign(n, 0);
    std::vector<std::size_t> sym;
    for (const auto& g : symmetric_generators()) sym.push_back(to_index(g));
    std::vector<bool> reached(n, false);
    reached[0] = true;
    std::deque<std::size_t> q{0};
    while (!q.empty()) {
      std::size_t x = q.front();
      q.pop_front();
      for (auto s : sym) {
        std::size_t y = table_[x][s];
        if (reached[y]) continue;
        reached[y] = true;
        distance_[y] = distance_[x] + 1;
        q.push_back(y);
      }
    }
  }

  std::string name_;
  FactorKind kind_ = FactorKind::finite;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<Generator> generators_;
  std::vector<std::size_t> inverse_;
  std::vector<std::vector<std::string>> spelling_;
  std::vector<std::size_t> distance_;
};

}  // namespace kurosh
