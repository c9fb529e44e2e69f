#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kurosh/core.hpp"
#include "kurosh/factor_group.hpp"

namespace kurosh {

// A subgroup of a single factor: kZ for the integers (k = 0 is trivial), or
// a sorted list of table indices for a finite factor.
class FactorSubgroup {
 public:
  enum class Kind { cyclic, finite_subset };

  static FactorSubgroup trivial(const FactorGroup& f) {
    FactorSubgroup s;
    if (f.is_integer()) {
      s.kind_ = Kind::cyclic;
    } else {
      s.kind_ = Kind::finite_subset;
      s.elems_ = {Integer(0)};
    }
    return s;
  }

  static FactorSubgroup whole(const FactorGroup& f) {
    if (f.is_integer()) return cyclic(1);
    FactorSubgroup s;
    s.kind_ = Kind::finite_subset;
    for (std::size_t i = 0; i < f.order(); ++i) s.elems_.emplace_back(i);
    return s;
  }

  static FactorSubgroup cyclic(Integer k) {
    FactorSubgroup s;
    s.kind_ = Kind::cyclic;
    s.k_ = abs(k);
    return s;
  }

  static FactorSubgroup generated(const FactorGroup& f, const std::vector<Integer>& gens) {
    FactorSubgroup s = trivial(f);
    for (const auto& g : gens) s = s.adjoin(f, g);
    return s;
  }

  Kind kind() const { return kind_; }
  const Integer& modulus() const { return k_; }
  const std::vector<Integer>& elements() const { return elems_; }

  bool is_trivial() const {
    return kind_ == Kind::cyclic ? k_.is_zero() : elems_.size() == 1;
  }

  bool contains(const Integer& x) const {
    if (kind_ == Kind::cyclic) return k_.is_zero() ? x.is_zero() : Integer(x % k_).is_zero();
    return std::binary_search(elems_.begin(), elems_.end(), x);
  }

  bool contains(const FactorSubgroup& other) const {
    if (kind_ == Kind::cyclic) return contains(other.k_);
    return std::includes(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end());
  }

  FactorSubgroup adjoin(const FactorGroup& f, const Integer& x) const {
    if (contains(x)) return *this;
    if (kind_ == Kind::cyclic) return cyclic(gcd(k_, x));
    std::vector<Integer> gens = elems_;
    gens.push_back(x);
    return closure(f, gens);
  }

  FactorSubgroup join(const FactorGroup& f, const FactorSubgroup& other) const {
    if (kind_ == Kind::cyclic) return cyclic(gcd(k_, other.k_));
    std::vector<Integer> gens = elems_;
    gens.insert(gens.end(), other.elems_.begin(), other.elems_.end());
    return closure(f, gens);
  }

  FactorSubgroup intersect(const FactorSubgroup& other) const {
    if (kind_ == Kind::cyclic) {
      if (k_.is_zero() || other.k_.is_zero()) return cyclic(0);
      return cyclic(lcm(k_, other.k_));
    }
    FactorSubgroup s;
    s.kind_ = Kind::finite_subset;
    std::set_intersection(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                          std::back_inserter(s.elems_));
    return s;
  }

  // t S t^-1.
  FactorSubgroup conjugate(const FactorGroup& f, const Integer& t) const {
    if (kind_ == Kind::cyclic) return *this;
    FactorSubgroup s;
    s.kind_ = Kind::finite_subset;
    Integer ti = f.invert(t);
    for (const auto& x : elems_) s.elems_.push_back(f.multiply(f.multiply(t, x), ti));
    std::sort(s.elems_.begin(), s.elems_.end());
    return s;
  }

  // Canonical representative of the right coset S x.
  Integer coset_rep(const FactorGroup& f, const Integer& x) const {
    if (kind_ == Kind::cyclic) {
      if (k_.is_zero()) return x;
      Integer r = x % k_;
      if (r < 0) r += k_;
      return r;
    }
    Integer best = f.multiply(elems_.front(), x);
    for (const auto& s : elems_) best = std::min(best, f.multiply(s, x));
    return best;
  }

  // A generating set, chosen greedily in increasing element order.
  std::vector<Integer> generators(const FactorGroup& f) const {
    if (kind_ == Kind::cyclic) {
      if (k_.is_zero()) return {};
      return {k_};
    }
    std::vector<Integer> gens;
    FactorSubgroup span = trivial(f);
    for (const auto& x : elems_) {
      if (span.contains(x)) continue;
      gens.push_back(x);
      span = span.adjoin(f, x);
    }
    return gens;
  }

  // Writes x as a product of generators(): (generator index, exponent) pairs.
  std::vector<std::pair<std::size_t, Integer>> express(const FactorGroup& f, const Integer& x) const {
    if (!contains(x)) throw DomainError("element " + x.str() + " is not in the subgroup");
    if (x.is_zero()) return {};
    if (kind_ == Kind::cyclic) return {{0, x / k_}};
    auto gens = generators(f);
    std::map<Integer, std::pair<Integer, std::size_t>> parent;
    parent.emplace(Integer(0), std::make_pair(Integer(-1), 0));
    std::deque<Integer> queue{Integer(0)};
    while (!queue.empty() && !parent.count(x)) {
      Integer y = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Integer z = f.multiply(y, gens[i]);
        if (parent.emplace(z, std::make_pair(y, i)).second) queue.push_back(z);
      }
    }
    std::vector<std::size_t> path;
    for (Integer y = x; !y.is_zero(); y = parent.at(y).first) path.push_back(parent.at(y).second);
    std::reverse(path.begin(), path.end());
    std::vector<std::pair<std::size_t, Integer>> out;
    for (auto i : path) {
      if (!out.empty() && out.back().first == i)
        out.back().second += 1;
      else
        out.emplace_back(i, Integer(1));
    }
    return out;
  }

  std::string describe() const {
    if (kind_ == Kind::cyclic) return k_.str() + "Z";
    std::string s = "{";
    for (std::size_t i = 0; i < elems_.size(); ++i) s += (i ? "," : "") + elems_[i].str();
    return s + "}";
  }

  friend bool operator==(const FactorSubgroup& a, const FactorSubgroup& b) {
    return a.kind_ == b.kind_ && a.k_ == b.k_ && a.elems_ == b.elems_;
  }
  friend bool operator<(const FactorSubgroup& a, const FactorSubgroup& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    if (a.k_ != b.k_) return a.k_ < b.k_;
    return a.elems_ < b.elems_;
  }

 private:
  static FactorSubgroup closure(const FactorGroup& f, const std::vector<Integer>& gens) {
    std::vector<bool> in(f.order(), false);
    in[0] = true;
    std::vector<std::size_t> members{0};
    for (std::size_t i = 0; i < members.size(); ++i)
      for (const auto& g : gens) {
        std::size_t y = f.table()[members[i]][to_index(g)];
        if (!in[y]) {
          in[y] = true;
          members.push_back(y);
        }
      }
    FactorSubgroup s;
    s.kind_ = Kind::finite_subset;
    for (std::size_t i = 0; i < f.order(); ++i)
      if (in[i]) s.elems_.emplace_back(i);
    return s;
  }

  Kind kind_ = Kind::cyclic;
  Integer k_ = 0;
  std::vector<Integer> elems_;
};

}  // namespace kurosh
