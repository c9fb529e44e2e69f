#pragma once

#include <array>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "kurosh/core.hpp"
#include "kurosh/factor_group.hpp"

namespace kurosh {

enum class Side : std::uint8_t { left = 0, right = 1 };

inline Side other(Side s) { return s == Side::left ? Side::right : Side::left; }
inline std::size_t index_of(Side s) { return static_cast<std::size_t>(s); }

struct Syllable {
  Side side = Side::left;
  Integer elem;

  friend bool operator==(const Syllable& a, const Syllable& b) {
    return a.side == b.side && a.elem == b.elem;
  }
  friend bool operator<(const Syllable& a, const Syllable& b) {
    if (a.side != b.side) return a.side < b.side;
    return a.elem < b.elem;
  }
};

// Reduced normal form: alternating sides, no identity syllables.
class Word {
 public:
  Word() = default;

  const std::vector<Syllable>& syllables() const { return syl_; }
  std::size_t syllable_length() const { return syl_.size(); }
  bool is_identity() const { return syl_.empty(); }
  const Syllable& front() const { return syl_.front(); }
  const Syllable& back() const { return syl_.back(); }

  friend bool operator==(const Word& a, const Word& b) { return a.syl_ == b.syl_; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  friend bool operator<(const Word& a, const Word& b) {
    return std::lexicographical_compare(a.syl_.begin(), a.syl_.end(), b.syl_.begin(), b.syl_.end());
  }

  // Prefix of the first k syllables.
  Word prefix(std::size_t k) const {
    Word w;
    w.syl_.assign(syl_.begin(), syl_.begin() + static_cast<std::ptrdiff_t>(k));
    return w;
  }

 private:
  friend class FreeProduct;
  std::vector<Syllable> syl_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t seed = w.syllable_length();
    for (const auto& s : w.syllables()) {
      hash_combine(seed, static_cast<std::size_t>(s.side));
      hash_combine(seed, hash_integer(s.elem));
    }
    return seed;
  }
};

using WordSet = std::set<Word>;

// The free product of two factor groups. Cheap to copy; factors are shared.
class FreeProduct {
 public:
  FreeProduct(FactorGroup left, FactorGroup right)
      : data_(std::make_shared<const Data>(Data{{std::move(left), std::move(right)}})) {
    for (const auto& [n, e] : factor(Side::left).generators())
      if (factor(Side::right).element_of(n))
        throw DomainError("generator name " + n + " used by both factors");
  }

  const FactorGroup& factor(Side s) const { return data_->factors[index_of(s)]; }

  friend bool operator==(const FreeProduct& a, const FreeProduct& b) { return a.data_ == b.data_; }

  Word identity() const { return {}; }

  Word letter(Side side, const Integer& elem) const {
    factor(side).require_element(elem);
    Word w;
    if (!FactorGroup::is_identity(elem)) w.syl_.push_back({side, elem});
    return w;
  }

  Word normalize(const std::vector<Syllable>& raw) const {
    Word w;
    for (const auto& s : raw) {
      factor(s.side).require_element(s.elem);
      push(w.syl_, s);
    }
    return w;
  }

  Word multiply(const Word& u, const Word& v) const {
    Word w = u;
    for (const auto& s : v.syl_) push(w.syl_, s);
    return w;
  }

  Word multiply(std::initializer_list<Word> ws) const {
    Word w;
    for (const auto& x : ws)
      for (const auto& s : x.syl_) push(w.syl_, s);
    return w;
  }

  Word invert(const Word& w) const {
    Word r;
    r.syl_.reserve(w.syl_.size());
    for (auto it = w.syl_.rbegin(); it != w.syl_.rend(); ++it)
      r.syl_.push_back({it->side, factor(it->side).invert(it->elem)});
    return r;
  }

  Word conjugate(const Word& x, const Word& w) const {
    return multiply({x, w, invert(x)});
  }

  // Word length over the declared symmetric generating set.
  Integer length(const Word& w) const {
    Integer total = 0;
    for (const auto& s : w.syl_) total += factor(s.side).length(s.elem);
    return total;
  }

  // Symmetric generating set X_G or X_H as single-syllable words.
  std::vector<Word> factor_generators(Side side) const {
    std::vector<Word> out;
    for (const auto& e : factor(side).symmetric_generators()) out.push_back(letter(side, e));
    return out;
  }

  std::vector<Word> generators() const {
    std::vector<Word> out = factor_generators(Side::left);
    for (auto& w : factor_generators(Side::right)) out.push_back(std::move(w));
    return out;
  }

  // All products of at most n elements of x, sorted canonically.
  std::vector<Word> ball(const std::vector<Word>& x, std::size_t n) const {
    std::unordered_set<Word, WordHash> seen{identity()};
    std::vector<Word> frontier{identity()};
    for (std::size_t step = 0; step < n && !frontier.empty(); ++step) {
      std::vector<Word> next;
      for (const auto& w : frontier)
        for (const auto& g : x) {
          Word p = multiply(w, g);
          if (seen.insert(p).second) next.push_back(std::move(p));
        }
      frontier = std::move(next);
    }
    std::vector<Word> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Word> ball(std::size_t n) const { return ball(generators(), n); }

  Word parse(const std::string& text) const {
    std::istringstream in(text);
    std::string tok;
    std::vector<Syllable> raw;
    bool any = false;
    while (in >> tok) {
      any = true;
      if (tok == "1") continue;
      std::string name = tok;
      Integer k = 1;
      auto caret = tok.find('^');
      if (caret != std::string::npos) {
        name = tok.substr(0, caret);
        std::string exp = tok.substr(caret + 1);
        if (!valid_integer(exp)) throw DomainError("bad exponent in token '" + tok + "'");
        k = Integer(exp[0] == '+' ? exp.substr(1) : exp);
      }
      bool found = false;
      for (Side s : {Side::left, Side::right}) {
        if (auto e = factor(s).element_of(name)) {
          raw.push_back({s, factor(s).power(*e, k)});
          found = true;
          break;
        }
      }
      if (!found) throw DomainError("unknown generator name '" + name + "'");
    }
    if (!any) throw DomainError("empty word literal");
    return normalize(raw);
  }

  std::string format(const Word& w) const {
    if (w.is_identity()) return "1";
    std::string out;
    for (const auto& s : w.syl_)
      for (const auto& tok : factor(s.side).tokens(s.elem)) {
        if (!out.empty()) out += ' ';
        out += tok;
      }
    return out;
  }

 private:
  struct Data {
    std::array<FactorGroup, 2> factors;
  };

  void push(std::vector<Syllable>& syl, const Syllable& s) const {
    if (FactorGroup::is_identity(s.elem)) return;
    if (!syl.empty() && syl.back().side == s.side) {
      Integer m = factor(s.side).multiply(syl.back().elem, s.elem);
      if (FactorGroup::is_identity(m))
        syl.pop_back();
      else
        syl.back().elem = std::move(m);
      return;
    }
    syl.push_back(s);
  }

  static bool valid_integer(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  }

  std::shared_ptr<const Data> data_;
};

}  // namespace kurosh
