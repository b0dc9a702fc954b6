#include <random>

#include "doctest.h"
#include "gstrata/cpoly.hpp"
#include "gstrata/errors.hpp"
#include "gstrata/groebner.hpp"
#include "gstrata/monomial.hpp"
#include "gstrata/term_order.hpp"

using namespace gstrata;

namespace {

CPoly C(Var v) { return CPoly::variable(v); }

CPoly random_cpoly(std::mt19937_64& rng, Var nvars, int terms, int maxdeg) {
  std::vector<CTerm> ts;
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, maxdeg);
  std::uniform_int_distribution<Var> var(0, nvars - 1);
  for (int k = 0; k < terms; ++k) {
    std::vector<CMonomial::Factor> f;
    int d = deg(rng);
    for (int i = 0; i < d; ++i) f.emplace_back(var(rng), 1);
    ts.push_back({CMonomial(std::move(f)), Rational(coef(rng))});
  }
  return CPoly::from_terms(std::move(ts));
}

CPoly spoly(const CPoly& f, const CPoly& g, const COrder& ord) {
  const CTerm& a = leading_term(f, ord);
  const CTerm& b = leading_term(g, ord);
  CMonomial l = a.mono.lcm(b.mono);
  return f.times(l / a.mono, 1 / a.coef) - g.times(l / b.mono, 1 / b.coef);
}

}  // namespace

TEST_CASE("monomial compare under weight order") {
  auto ord = TermOrder::segment_weight({3, 2, 1, 1});
  auto a = parse_monomial("X2^3*X0^3", 4);
  auto b = parse_monomial("X3*X1^5", 4);
  CHECK(ord.compare(a, b) > 0);
  CHECK(ord.compare(a, a) == 0);
  auto lex = TermOrder::lex(4);
  CHECK(lex.compare(parse_monomial("X3*X0", 4), parse_monomial("X2^2", 4)) > 0);
}

TEST_CASE("weight matrix validation") {
  CHECK_THROWS_AS(TermOrder::weight(4, {{3, 2, 1, 1}}), PreconditionError);
  // rows that put X0 above X1
  CHECK_THROWS_AS(TermOrder::weight(2, {{0, 1}}), PreconditionError);
  auto w = TermOrder::weight(2, {{1, 0}});
  CHECK(w.rows().size() == 2);
}

TEST_CASE("bracket syntax lists X_n first") {
  auto m = parse_monomial("[2,0,1,0]", 4);
  CHECK(m == parse_monomial("X3^2*X1", 4));
  CHECK(m.to_bracket() == "[2,0,1,0]");
  CHECK(m.to_string() == "X3^2*X1");
  CHECK_THROWS_AS(parse_monomial("[1,2]", 4), ParseError);
  CHECK_THROWS_AS(parse_monomial("X7", 4), ParseError);
}

TEST_CASE("lcm and cofactors") {
  auto x2 = parse_monomial("X1^2", 2), xy = parse_monomial("X1*X0", 2);
  auto r = lcm_and_cofactors(x2, xy);
  CHECK(r.lcm == parse_monomial("X1^2*X0", 2));
  CHECK(r.left == parse_monomial("X0", 2));
  CHECK(r.right == parse_monomial("X1", 2));
  auto s = lcm_and_cofactors(x2, x2);
  CHECK(s.lcm == x2);
  CHECK(s.left.is_one());
  CHECK(s.right.is_one());
  auto x3 = parse_monomial("X1^3", 2), y2 = parse_monomial("X0^2", 2);
  auto t = lcm_and_cofactors(x3, y2);
  CHECK(t.lcm == parse_monomial("X1^3*X0^2", 2));
  CHECK(t.left == y2);
  CHECK(t.right == x3);
}

TEST_CASE("term orders are multiplicative and total on each degree") {
  std::mt19937_64 rng(7);
  std::vector<TermOrder> orders = {TermOrder::lex(4), TermOrder::degrevlex(4),
                                   TermOrder::segment_weight({3, 2, 1, 1}),
                                   TermOrder::segment_weight({15, 5, 2, 1})};
  std::uniform_int_distribution<int> e(0, 3);
  auto rnd = [&] { return Monomial({e(rng), e(rng), e(rng), e(rng)}); };
  for (const auto& ord : orders) {
    for (int k = 0; k < 200; ++k) {
      auto a = rnd(), b = rnd(), g = rnd();
      CHECK(ord.compare(a, b) == ord.compare(a * g, b * g));
    }
    auto ms = monomials_of_degree(4, 4);
    sort_descending(ms, ord);
    for (std::size_t i = 0; i + 1 < ms.size(); ++i) CHECK(ord.compare(ms[i], ms[i + 1]) > 0);
  }
}

TEST_CASE("CPoly exact arithmetic") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    CPoly p = random_cpoly(rng, 4, 5, 3), q = random_cpoly(rng, 4, 5, 3);
    CHECK((p + q) - q == p);
    CHECK(p * q == q * p);
    bool ok = false;
    if (!q.is_zero()) {
      CHECK((p * q).divide_exact(q, ok) == p);
      CHECK(ok);
    }
    CPoly canon = CPoly::from_terms(p.terms());
    CHECK(canon == p);
  }
  CPoly x = C(0), y = C(1);
  CHECK(((x + y) * (x - y)).to_string([](Var v) { return "c" + std::to_string(v); }) ==
        "-c1^2 + c0^2");
  CHECK(((x + y) * (x - y)).substitute({{1, x}}).is_zero());
  CHECK((x * x * y).derivative(0) == CPoly(2) * x * y);
  CHECK((CPoly(Rational(2, 3)) * x - CPoly(Rational(4, 3)) * y).normalized() == CPoly(2) * y - x);
}

TEST_CASE("lambda order puts a linear term above products of equal lambda degree") {
  // C1 = var 1 with lambda 2, C2 = var 0 with lambda 1.
  auto table = std::make_shared<LambdaTable>(TermOrder::degrevlex(1),
                                             std::vector<std::vector<int>>{{1}, {2}});
  auto ord = COrder::lambda(table);
  CHECK(ord.compare(CMonomial::variable(1), CMonomial::variable(0, 2)) > 0);
  CHECK(ord.compare(CMonomial::variable(0), CMonomial()) > 0);
  auto gb = groebner_basis({C(1) + C(0) * C(0), C(0) * C(0) * C(0)}, ord);
  REQUIRE(gb.size() == 2);
  std::set<std::string> lts;
  for (const auto& g : gb) {
    auto m = leading_term(g, ord).mono;
    lts.insert(std::to_string(m.factors()[0].first) + "^" + std::to_string(m.degree()));
  }
  CHECK(lts == std::set<std::string>{"1^1", "0^3"});
}

TEST_CASE("groebner_basis small cases") {
  auto ord = COrder::degrevlex();
  CHECK(groebner_basis({C(0)}, ord) == std::vector<CPoly>{C(0)});
  CHECK(groebner_basis({C(0) * C(0), C(0)}, ord) == std::vector<CPoly>{C(0)});
  CHECK(groebner_basis({}, ord).empty());
  CHECK(groebner_basis({C(0) - 1, C(0) + 1}, ord) == std::vector<CPoly>{CPoly(1)});
}

TEST_CASE("ideal_equal") {
  auto ord = COrder::degrevlex();
  CHECK(ideal_equal({C(0) * C(0)}, {C(0) * C(0)}, ord));
  CHECK(ideal_equal({C(0), C(1)}, {C(1), C(0) + C(1)}, ord));
  CHECK_FALSE(ideal_equal({C(0) * C(0)}, {C(0)}, ord));
}

TEST_CASE("eliminate") {
  auto ord = COrder::degrevlex();
  CHECK(eliminate({C(1) + C(0) * C(0)}, {1}, ord).empty());
  CHECK(ideal_equal(eliminate({C(1) * C(0)}, {}, ord), {C(1) * C(0)}, ord));
  CHECK(eliminate({C(1), C(0) * C(0)}, {1}, ord) == std::vector<CPoly>{C(0) * C(0)});
  // twisted cubic: eliminating t from (x - t, y - t^2, z - t^3)
  auto el = eliminate({C(1) - C(0), C(2) - C(0) * C(0), C(3) - C(0) * C(0) * C(0)}, {0}, ord);
  CHECK(in_ideal(C(2) - C(1) * C(1), el, ord));
  CHECK(in_ideal(C(3) - C(1) * C(2), el, ord));
  for (const auto& g : el) CHECK_FALSE(g.contains_var(0));
}

TEST_CASE("ideal_quotient") {
  auto ord = COrder::degrevlex();
  CHECK(ideal_equal(ideal_quotient({C(0) * C(1)}, C(0), ord), {C(1)}, ord));
  CHECK(ideal_equal(ideal_quotient({C(0) * C(0)}, C(0), ord), {C(0)}, ord));
  CHECK(ideal_equal(ideal_quotient({C(0) * C(0) + C(1)}, CPoly(5), ord), {C(0) * C(0) + C(1)}, ord));
  CHECK_THROWS_AS(ideal_quotient({C(0)}, CPoly(), ord), PreconditionError);
  // (I : f) * f is contained in I
  std::vector<CPoly> I = {C(0) * C(1) * C(2), C(0) * C(0) * C(2) + C(1) * C(2)};
  CPoly f = C(0) * C(0) + C(1);
  auto gbI = groebner_basis(I, ord);
  for (const auto& g : ideal_quotient(I, f, ord)) CHECK(in_ideal(g * f, gbI, ord));
}

TEST_CASE("krull_dimension") {
  auto ord = COrder::degrevlex();
  std::set<Var> amb;
  for (Var v = 0; v < 24; ++v) amb.insert(v);
  CHECK(krull_dimension({}, amb, ord) == 24);
  CHECK(krull_dimension({C(0)}, amb, ord) == 23);
  CHECK(krull_dimension({C(1) + C(0) * C(0)}, {0, 1}, ord) == 1);
  CHECK(krull_dimension({CPoly(1)}, amb, ord) == -1);
  CHECK(krull_dimension({C(0) * C(1), C(0) * C(2)}, {0, 1, 2}, ord) == 2);
}

TEST_CASE("Buchberger fixed point and order-independent dimension on random ideals") {
  std::mt19937_64 rng(2024);
  auto lex = COrder::lex(), drl = COrder::degrevlex();
  for (int k = 0; k < 25; ++k) {
    std::vector<CPoly> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(random_cpoly(rng, 4, 3, 2));
    for (const auto* ord : {&lex, &drl}) {
      auto gb = groebner_basis(gens, *ord);
      for (std::size_t i = 0; i < gb.size(); ++i)
        for (std::size_t j = i + 1; j < gb.size(); ++j)
          CHECK(normal_form(spoly(gb[i], gb[j], *ord), gb, *ord).is_zero());
      for (const auto& g : gens) CHECK(in_ideal(g, gb, *ord));
      CHECK(gb == groebner_basis(gb, *ord));
    }
    CHECK(krull_dimension(gens, {0, 1, 2, 3}, lex) == krull_dimension(gens, {0, 1, 2, 3}, drl));
  }
}
