#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "kurosh/core.hpp"

namespace kurosh {

inline std::string format_rational(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

// Orientation-preserving piecewise-linear homeomorphism of the line with
// rational breakpoints, the identity outside the breakpoint hull.
class PLMap {
 public:
  using Point = std::pair<Rational, Rational>;

  PLMap() = default;

  explicit PLMap(std::vector<Point> points) : pts_(std::move(points)) {
    for (std::size_t i = 1; i < pts_.size(); ++i)
      if (pts_[i].first <= pts_[i - 1].first || pts_[i].second <= pts_[i - 1].second)
        throw DomainError("PL breakpoints must be strictly increasing in both coordinates");
    if (!pts_.empty() && (pts_.front().first != pts_.front().second || pts_.back().first != pts_.back().second))
      throw DomainError("PL map must be the identity outside its breakpoint hull");
    simplify();
  }

  static PLMap identity() { return {}; }

  const std::vector<Point>& breakpoints() const { return pts_; }
  bool is_identity() const { return pts_.empty(); }

  Rational operator()(const Rational& x) const {
    if (pts_.empty() || x <= pts_.front().first || x >= pts_.back().first) return x;
    auto it = std::upper_bound(pts_.begin(), pts_.end(), x,
                               [](const Rational& v, const Point& p) { return v < p.first; });
    const auto& [x1, y1] = *it;
    const auto& [x0, y0] = *std::prev(it);
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
  }

  PLMap inverse() const {
    PLMap out;
    for (const auto& [x, y] : pts_) out.pts_.emplace_back(y, x);
    return out;
  }

  // (*this ∘ g)(x) = (*this)(g(x)).
  PLMap compose(const PLMap& g) const {
    std::vector<Rational> xs;
    for (const auto& p : g.pts_) xs.push_back(p.first);
    PLMap ginv = g.inverse();
    for (const auto& p : pts_) xs.push_back(ginv(p.first));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    PLMap out;
    for (const auto& x : xs) out.pts_.emplace_back(x, (*this)(g(x)));
    out.simplify();
    return out;
  }

  PLMap conjugate_by(const PLMap& phi) const { return phi.compose(*this).compose(phi.inverse()); }

  // Exact agreement of two maps on the closed interval [lo, hi].
  bool agrees_on(const PLMap& g, const Rational& lo, const Rational& hi) const {
    std::vector<Rational> xs{lo, hi};
    for (const auto* m : {&pts_, &g.pts_})
      for (const auto& p : *m)
        if (p.first > lo && p.first < hi) xs.push_back(p.first);
    return std::all_of(xs.begin(), xs.end(), [&](const Rational& x) { return (*this)(x) == g(x); });
  }

  std::string format() const {
    if (pts_.empty()) return "id";
    std::string s;
    for (const auto& [x, y] : pts_) {
      if (!s.empty()) s += " ";
      s += "(" + format_rational(x) + "," + format_rational(y) + ")";
    }
    return s;
  }

  friend bool operator==(const PLMap& a, const PLMap& b) { return a.pts_ == b.pts_; }

 private:
  void simplify() {
    auto on_diagonal = [](const Point& p) { return p.first == p.second; };
    std::size_t lo = 0, hi = pts_.size();
    while (hi - lo >= 2 && on_diagonal(pts_[lo + 1])) ++lo;
    while (hi - lo >= 2 && on_diagonal(pts_[hi - 2])) --hi;
    std::vector<Point> kept;
    for (std::size_t i = lo; i < hi; ++i) {
      if (!kept.empty() && i + 1 < hi) {
        const auto& a = kept.back();
        const auto& b = pts_[i];
        const auto& c = pts_[i + 1];
        if ((b.second - a.second) * (c.first - b.first) == (c.second - b.second) * (b.first - a.first)) continue;
      }
      kept.push_back(pts_[i]);
    }
    if (kept.size() < 2) kept.clear();
    pts_ = std::move(kept);
  }

  std::vector<Point> pts_;
};

inline PLMap pl_compose(const PLMap& f, const PLMap& g) { return f.compose(g); }
inline PLMap pl_invert(const PLMap& f) { return f.inverse(); }
inline Rational pl_eval(const PLMap& f, const Rational& x) { return f(x); }

}  // namespace kurosh
