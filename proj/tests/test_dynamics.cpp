#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace kurosh;
using namespace fixtures;

namespace {

PLMap translation_window() { return PLMap({{-8, -8}, {-6, -5}, {6, 7}, {8, 8}}); }

PLMap dilation_window() { return PLMap({{0, 0}, {1, 2}, {4, 4}}); }

std::vector<Rational> samples() {
  std::vector<Rational> out;
  for (int k = -40; k <= 40; ++k) out.emplace_back(k, 3);
  return out;
}

TruncatedCone magnus_cone(const FreeProduct& g, std::size_t r) {
  MagnusOrder m(g);
  return cone_from_rule(ball_domain(g, r), trivial_subgroup(g), [&](const Word& w) { return m.sign(w); });
}

bool is_member(const TruncatedCone& c) {
  EnumerationOptions opt;
  for (std::size_t i = 0; i < c.sign.size(); ++i) opt.pins[i] = c.sign[i];
  auto found = enumerate_cones(c.domain, c.relative_to, opt);
  return found.size() == 1 && found.front().sign == c.sign;
}

void expect_witness(const Witness& w, const TruncatedCone& c) {
  EXPECT_TRUE(check_axioms(w.c_prime).empty());
  for (const auto& y : w.y) EXPECT_EQ(w.c_prime.at(y), c.at(y));
  EXPECT_EQ(w.c.at(w.gamma), 1);
  EXPECT_EQ(w.c_prime.at(w.gamma), -1);
  EXPECT_TRUE(is_member(w.c_prime));
}

}  // namespace

TEST(PLMap, IdentityIsNeutral) {
  auto f = dilation_window();
  EXPECT_EQ(PLMap::identity().compose(f), f);
  EXPECT_EQ(f.compose(PLMap::identity()), f);
}

TEST(PLMap, InverseCancels) {
  for (const auto& f : {translation_window(), dilation_window(), translation_window().compose(dilation_window())}) {
    auto id = f.compose(f.inverse());
    EXPECT_TRUE(id.is_identity());
    for (const auto& x : samples()) EXPECT_EQ(f.inverse()(f(x)), x);
  }
}

TEST(PLMap, HandEvaluatedComposite) {
  auto t = translation_window();
  auto s = dilation_window();
  EXPECT_EQ(t(Rational(1)), Rational(2));
  EXPECT_EQ(s(Rational(1)), Rational(2));
  EXPECT_EQ(pl_eval(pl_compose(t, s), Rational(1)), Rational(3));
  EXPECT_EQ(pl_eval(pl_compose(s, t), Rational(1)), Rational(8, 3));
  for (const auto& x : samples()) EXPECT_EQ(pl_compose(s, t)(x), s(t(x)));
}

TEST(PLMap, RejectsInvalidBreakpoints) {
  EXPECT_THROW(PLMap({{0, 0}, {1, 2}, {2, 1}, {4, 4}}), DomainError);
  EXPECT_THROW(PLMap({{0, 1}, {4, 4}}), DomainError);
  EXPECT_THROW(PLMap({{0, 0}, {0, 0}}), DomainError);
}

TEST(PLMap, SimplifiesRedundantBreakpoints) {
  EXPECT_TRUE(PLMap({{0, 0}, {1, 1}, {2, 2}}).is_identity());
  PLMap f({{-1, -1}, {0, 0}, {1, 2}, {2, 3}, {3, 4}, {6, 6}, {7, 7}});
  EXPECT_EQ(f.breakpoints().size(), 4u);
  EXPECT_EQ(f(Rational(5, 2)), Rational(7, 2));
  EXPECT_EQ(f.format(), "(0,0) (1,2) (3,4) (6,6)");
}

TEST(PLMap, AgreementOnIntervals) {
  auto s = dilation_window();
  PLMap r({{0, 0}, {1, 2}, {3, 3}});
  EXPECT_TRUE(s.agrees_on(r, -5, 1));
  EXPECT_FALSE(s.agrees_on(r, -5, Rational(3, 2)));
  EXPECT_TRUE(s.agrees_on(r, 5, 9));
}

TEST(Realize, IntegerNaturalOrder) {
  auto g = z_only();
  auto c = cone_from_rule(ball_domain(g, 6), trivial_subgroup(g),
                          [](const Word& w) { return w.front().elem > 0 ? 1 : -1; });
  auto d = realize(c, 3);
  for (int k = -3; k <= 3; ++k) EXPECT_EQ(d.orbit(g.letter(Side::left, Integer(k))), Rational(k));
  EXPECT_TRUE(realization_faithful(d, oracle_of(c), 3));
}

TEST(Realize, MagnusOrderOnTheFreeGroup) {
  auto g = free_group();
  MagnusOrder m(g);
  auto c = trivial_subgroup(g);
  auto d = realize([&](const Word& w) { return std::optional<int>(m.sign(w)); }, *c, 2);
  auto ball = g.ball(2);
  ASSERT_EQ(ball.size(), 17u);
  for (const auto& u : ball)
    for (const auto& v : ball) {
      Rational diff = d.orbit(v) - d.orbit(u);
      EXPECT_EQ(diff > 0 ? 1 : (diff < 0 ? -1 : 0), m.compare(u, v));
    }
}

TEST(Realize, RelativeStabilizerContainsC) {
  auto g = free_group();
  auto c = subgroup(g, {"b"});
  EnumerationOptions opt;
  opt.limit = 1;
  auto cone = enumerate_cones(ball_domain(g, 4), c, opt).front();
  auto d = realize(cone, 2);
  for (const auto& w : g.ball(2)) EXPECT_EQ(d.orbit(w) == 0, c->contains(w));
  EXPECT_TRUE(realization_faithful(d, oracle_of(cone), 2));
}

TEST(Realize, RejectsClosureViolation) {
  auto g = free_group();
  auto c = magnus_cone(g, 4);
  auto& d = *c.domain;
  for (const char* lit : {"a b", "b^-1 a^-1"}) c.sign[*d.find(g.parse(lit))] *= -1;
  auto v = check_axioms(c);
  ASSERT_FALSE(v.empty());
  EXPECT_THROW(realize(c, 2), DomainError);
}

TEST(Realize, RejectsTorsion) { EXPECT_THROW(PartialAction{z2_z3()}, DomainError); }

TEST(FindGh, TrivialSubgroup) {
  auto g = free_group();
  auto c = trivial_subgroup(g);
  auto lambda = g.parse("a b");
  auto r = find_gh(*c, lambda);
  ASSERT_TRUE(r.has_value());
  std::set<Word> images;
  for (const auto& x : {g.parse("a"), g.parse("a^-1"), g.parse("b"), g.parse("b^-1"), g.identity()})
    images.insert(g.multiply(x, lambda));
  EXPECT_EQ(images.size(), 5u);
}

TEST(FindGh, WholeGroupIsExceptional) {
  auto g = free_group();
  auto c = subgroup(g, {"a", "b"});
  EXPECT_FALSE(find_gh(*c, g.identity()).has_value());
  EXPECT_EQ(xi_complement(*c), std::vector<Word>{g.identity()});
}

TEST(FindGh, IndexTwoSubgroup) {
  auto g = free_group();
  auto c = subgroup(g, {"a^2", "b", "a b a^-1"});
  EXPECT_FALSE(find_gh(*c, g.parse("a")).has_value());
  EXPECT_FALSE(find_gh(*c, g.identity()).has_value());
}

TEST(FindGh, MatchesXiOnInverses) {
  auto g = free_group();
  for (const auto& gens : std::vector<std::vector<std::string>>{{}, {"b"}, {"a^2", "b"}, {"a b a^-1 b^-1"}}) {
    auto c = subgroup(g, gens);
    for (const auto& w : g.ball(4)) EXPECT_EQ(find_gh(*c, w).has_value(), in_xi(*c, g.invert(w)));
  }
}

TEST(Perturb, MagnusConeWithPositiveGenerators) {
  auto g = free_group();
  auto c = magnus_cone(g, 6);
  std::vector<Word> y;
  for (const auto& w : g.ball(1))
    if (c.at(w) > 0) y.push_back(w);
  auto w = nonisolation_witness(c, y, 1);
  expect_witness(w, c);
  EXPECT_EQ(w.c.sign, c.sign);
}

TEST(Perturb, EmptyAgreementSet) {
  auto g = free_group();
  auto c = magnus_cone(g, 6);
  auto w = nonisolation_witness(c, {});
  expect_witness(w, c);
  EXPECT_NE(w.c_prime.at(w.gamma), c.at(w.gamma));
}

TEST(Perturb, BothBranchesOverRadiusTwoCones) {
  auto g = free_group();
  auto cones = enumerate_cones(ball_domain(g, 2), trivial_subgroup(g));
  ASSERT_FALSE(cones.empty());
  std::set<bool> branches;
  for (const auto& c : cones) {
    auto w = nonisolation_witness(c, g.ball(1));
    expect_witness(w, c);
    branches.insert(w.detail.swapped);
  }
  EXPECT_EQ(branches.size(), 2u);
}

TEST(Perturb, ProofInvariants) {
  auto g = free_group();
  auto c = magnus_cone(g, 6);
  auto w = nonisolation_witness(c, g.ball(1), 1);
  const auto& r = w.detail;
  const auto& d = w.realization;
  const auto& dp = r.perturbed;
  EXPECT_EQ(r.phi(Rational(0)), 0);
  EXPECT_EQ(r.phi.inverse()(Rational(0)), 0);
  EXPECT_LT(r.at_lambda, r.x0);
  EXPECT_LT(r.x0, r.x1);
  EXPECT_LT(r.x1, r.at_h_lambda);
  EXPECT_LT(r.at_h_lambda, r.at_g_lambda);
  EXPECT_LT(r.at_g_lambda, r.y1);
  EXPECT_LT(r.y1, r.y0);
  EXPECT_GT(r.phi(r.x1), r.y1);
  for (const auto& v : g.ball(2)) EXPECT_EQ(dp.orbit(v), d.orbit(v));
  Side s = r.conjugated_side;
  EXPECT_EQ(dp.generator(other(s)), d.generator(other(s)));
  auto outside = [&](const Rational& x) { return x <= r.x0 || x >= r.y0; };
  for (int k = -120; k <= 120; ++k) {
    Rational x(k, 4);
    if (outside(x) && outside(d.generator(s)(x))) EXPECT_EQ(dp.generator(s)(x), d.generator(s)(x));
  }
  Rational lo = d.orbit(r.lambda_n_minus), hi = d.orbit(r.lambda_n_plus);
  for (Rational x = lo; x <= hi; x += Rational(1, 3)) EXPECT_EQ(dp.generator(s)(x), d.generator(s)(x));
}

TEST(Perturb, RejectsBadAgreementSets) {
  auto g = free_group();
  auto c = magnus_cone(g, 6);
  auto d = realize(c, 3);
  auto sub = trivial_subgroup(g);
  Word neg = c.at(g.parse("a")) < 0 ? g.parse("a") : g.parse("a^-1");
  EXPECT_THROW(perturb(d, oracle_of(c), sub, {neg}, 1), DomainError);
  Word far = c.at(g.parse("a^2")) > 0 ? g.parse("a^2") : g.parse("a^-2");
  EXPECT_THROW(perturb(d, oracle_of(c), sub, {far}, 1), DomainError);
}

TEST(Perturb, NeedsTwoNontrivialFactors) {
  auto g = z_only();
  auto c = cone_from_rule(ball_domain(g, 6), trivial_subgroup(g),
                          [](const Word& w) { return w.front().elem > 0 ? 1 : -1; });
  EXPECT_THROW(nonisolation_witness(c, g.ball(1)), DomainError);
}

TEST(Perturb, RelativeToCyclicFactor) {
  auto g = free_group();
  auto sub = subgroup(g, {"b"});
  EnumerationOptions opt;
  opt.limit = 1;
  auto c = enumerate_cones(ball_domain(g, 6), sub, opt).front();
  auto w = nonisolation_witness(c, g.ball(1));
  expect_witness(w, c);
  for (const auto* cone : {&w.c, &w.c_prime})
    for (std::size_t i = 0; i < cone->sign.size(); ++i)
      EXPECT_EQ(cone->sign[i] == 0, sub->contains(cone->domain->word(i)));
}
