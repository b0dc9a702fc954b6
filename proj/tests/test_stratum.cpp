#include <random>
#include <set>

#include "doctest.h"
#include "gstrata/errors.hpp"
#include "gstrata/groebner.hpp"
#include "gstrata/stratum.hpp"
#include "test_support.hpp"

using namespace gstrata;
using namespace testing_support;

namespace {

// k[x, y] with x = X1, y = X0.
Monomial xy(const char* s) { return parse_monomial(s, 2); }
const MonomialIdeal xsq_xy = ideal(2, {"X1^2", "X1*X0"});

TailSpec example_tails() {
  return custom_tails(xsq_xy, TermOrder::lex(2), {{}, {xy("X0")}});
}

}  // namespace

TEST_CASE("tails") {
  auto lex = TermOrder::lex(2);
  auto t = tails(xsq_xy, lex, TailMode::Homogeneous);
  REQUIRE(t.leading == std::vector<Monomial>{xy("X1^2"), xy("X1*X0")});
  // oracle: filter the three degree-2 monomials
  for (std::size_t i = 0; i < 2; ++i) {
    std::vector<Monomial> expect;
    for (const auto& m : monomials_of_degree(2, 2))
      if (!xsq_xy.contains(m) && lex.compare(m, t.leading[i]) < 0) expect.push_back(m);
    CHECK(t.tails[i] == expect);
  }
  CHECK(t.tails[0] == std::vector<Monomial>{xy("X0^2")});

  SUBCASE("X0^d has an empty homogeneous tail") {
    auto j = ideal(3, {"X2", "X1^2", "X1*X0", "X0^3"});
    auto tt = tails(j, TermOrder::degrevlex(3), TailMode::Homogeneous);
    REQUIRE(tt.leading.front() == parse_monomial("X0^3", 3));
    CHECK(tt.tails.front().empty());
  }
  SUBCASE("smallest generator of a segment ideal sees the whole complement") {
    auto j = lexsegment_ideal({1, 1});
    auto tt = tails(j, TermOrder::lex(3), TailMode::Homogeneous);
    auto comp = j.complement(2);
    CHECK(std::set<Monomial>(tt.tails.back().begin(), tt.tails.back().end()) ==
          std::set<Monomial>(comp.begin(), comp.end()));
  }
  SUBCASE("full tails") {
    CHECK_THROWS_AS(tails(xsq_xy, lex, TailMode::Full), PreconditionError);
    auto z = ideal(2, {"X1^2", "X1*X0", "X0^2"});
    auto tf = tails(z, lex, TailMode::Full);
    CHECK(tf.tails[0] == std::vector<Monomial>{xy("X1"), xy("X0"), xy("1")});
    CHECK(tf.tails[2] == std::vector<Monomial>{xy("X0"), xy("1")});
    auto tg = tails(xsq_xy, TermOrder::degrevlex(2), TailMode::Full);
    CHECK(tg.tails[0] == std::vector<Monomial>{xy("X0^2"), xy("X1"), xy("X0"), xy("1")});
  }
  SUBCASE("custom tails are validated") {
    CHECK_THROWS_AS(custom_tails(xsq_xy, lex, {{xy("X1*X0")}, {}}), PreconditionError);
    CHECK_THROWS_AS(custom_tails(ideal(2, {"X0^2"}), TermOrder::degrevlex(2), {{xy("X1^2")}}), PreconditionError);
    CHECK_THROWS_AS(custom_tails(xsq_xy, lex, {{}}), PreconditionError);
  }
}

TEST_CASE("generic_generators") {
  auto fam = generic_generators(xsq_xy, TermOrder::lex(2), example_tails());
  REQUIRE(fam.vars.size() == 1);
  CHECK(fam.F[0].to_string(fam.vars.namer()) == "X1^2");
  CHECK(fam.F[1].to_string(fam.vars.namer()) == "X1*X0 + c2_1*X0");
  CHECK(fam.vars[0].lambda == std::vector<int>{0, 1});

  auto h = generic_generators(xsq_xy, TermOrder::lex(2), tails(xsq_xy, TermOrder::lex(2), TailMode::Homogeneous));
  REQUIRE(h.vars.size() == 2);
  // lambda(C2) = xy - y^2 is below lambda(C1) = x^2 - y^2
  CHECK(h.var_of[0][0] == 1);
  CHECK(h.var_of[1][0] == 0);
  CHECK(h.F[0].leading_monomial() == xy("X1^2"));
  CHECK(h.F[0].coefficient(xy("X0^2")) == Cv(1));
  CHECK(h.F[1].coefficient(xy("X0^2")) == Cv(0));

  auto empty = generic_generators(xsq_xy, TermOrder::lex(2), custom_tails(xsq_xy, TermOrder::lex(2), {{}, {}}));
  CHECK(empty.vars.size() == 0);
  CHECK(empty.F[1].size() == 1);
}

TEST_CASE("spair_generators") {
  CHECK(spair_generators(std::vector<Monomial>{xy("X1^2"), xy("X0^3")}).empty());
  auto p = spair_generators(xsq_xy, TermOrder::lex(2));
  REQUIRE(p.size() == 1);
  CHECK(p[0].lcm == xy("X1^2*X0"));
  CHECK(p[0].left == xy("X0"));
  CHECK(p[0].right == xy("X1"));
  // (x^2, xy, y^2): (x^2, y^2) is coprime
  CHECK(spair_generators(ideal(2, {"X1^2", "X1*X0", "X0^2"}), TermOrder::lex(2)).size() == 2);
  // chain: (x^3, xy^2) is covered through x^2y
  CHECK(spair_generators(ideal(2, {"X1^3", "X1^2*X0", "X1*X0^2"}), TermOrder::lex(2)).size() == 2);
  // equal lcms are never pruned against each other
  CHECK(spair_generators(ideal(3, {"X2*X1", "X2*X0", "X1*X0"}), TermOrder::lex(3)).size() == 3);

  auto L = lexsegment_ideal({0, 4, 2});
  PairOptions next;
  next.only_next_degree = true;
  auto pp = spair_generators(L, TermOrder::lex(4), next);
  CHECK(!pp.empty());
  for (const auto& q : pp) CHECK(q.lcm.degree() == 7);
  for (const auto& q : spair_generators(L, TermOrder::lex(4)))
    CHECK(q.lcm == lcm_and_cofactors(L.sorted_generators(TermOrder::lex(4))[q.i],
                                     L.sorted_generators(TermOrder::lex(4))[q.k]).lcm);
}

TEST_CASE("reduce_complete and reduce_mod_monomials") {
  auto fam = generic_generators(xsq_xy, TermOrder::lex(2), example_tails());
  auto name = fam.vars.namer();
  auto pairs = spair_generators(fam.tails.leading);
  auto s = s_polynomial(fam, pairs[0]);
  CHECK(s.to_string(name) == "-c2_1*X1*X0");
  auto r = reduce_complete(s, fam.F);
  CHECK(r.to_string(name) == "c2_1^2*X0");
  CHECK(reduce_complete(r, fam.F) == r);
  CHECK(reduce_mod_monomials(s, xsq_xy).is_zero());
  CHECK(reduce_mod_monomials(r, xsq_xy) == r);

  auto hom = generic_generators(xsq_xy, TermOrder::lex(2), tails(xsq_xy, TermOrder::lex(2), TailMode::Homogeneous));
  auto hn = hom.vars.namer();
  auto hs = s_polynomial(hom, spair_generators(hom.tails.leading)[0]);
  // C1 y^3 - C2 x y^2 with C1 = c1_1 (var 1), C2 = c2_1 (var 0)
  CHECK(hs.coefficient(xy("X0^3")) == Cv(1));
  CHECK(hs.coefficient(xy("X1*X0^2")) == -Cv(0));
  auto hr = reduce_complete(hs, hom.F);
  REQUIRE(hr.size() == 1);
  CHECK(hr.coefficient(xy("X0^3")) == Cv(1) + Cv(0) * Cv(0));
  auto hm = reduce_mod_monomials(hs, xsq_xy);
  REQUIRE(hm.size() == 1);
  CHECK(hm.coefficient(xy("X0^3")) == Cv(1));
  (void)hn;
}

TEST_CASE("stratum_ideal") {
  SUBCASE("double point") {
    auto res = stratum_ideal(xsq_xy, example_tails(), TermOrder::lex(2));
    REQUIRE(res.h.size() == 1);
    CHECK(res.h[0].poly == Cv(0) * Cv(0));
    CHECK(res.linear.empty());
    CHECK(res.h[0].xmono == xy("X0"));
  }
  SUBCASE("principal ideal") {
    auto j = ideal(3, {"X2^2"});
    auto res = stratum_ideal(j, tails(j, TermOrder::degrevlex(3), TailMode::Homogeneous), TermOrder::degrevlex(3));
    CHECK(res.h.empty());
    CHECK(res.family.vars.size() == 5);
  }
  SUBCASE("homogeneous (x^2, xy)") {
    auto res = stratum_ideal(xsq_xy, tails(xsq_xy, TermOrder::lex(2), TailMode::Homogeneous), TermOrder::lex(2));
    REQUIRE(res.h.size() == 1);
    CHECK(res.h[0].poly == Cv(1) + Cv(0) * Cv(0));
    REQUIRE(res.linear.size() == 1);
    CHECK(res.linear[0].poly == Cv(1));
  }
}

TEST_CASE("check_point") {
  auto fam = generic_generators(xsq_xy, TermOrder::lex(2), example_tails());
  CHECK(check_point(fam, {0}));
  CHECK_FALSE(check_point(fam, {1}));
  CHECK_THROWS_AS(check_point(fam, {}), PreconditionError);
  auto hom = generic_generators(xsq_xy, TermOrder::lex(2), tails(xsq_xy, TermOrder::lex(2), TailMode::Homogeneous));
  // (C1, C2) = (-1, 1): var 1 is C1, var 0 is C2
  CHECK(check_point(hom, {Qv(1), Qv(-1)}));
  CHECK_FALSE(check_point(hom, {Qv(1), Qv(1)}));
}

namespace {

StratumResult random_stratum(std::mt19937_64& rng, const StratumOptions& opts, MonomialIdeal* out = nullptr) {
  std::uniform_int_distribution<int> nv(2, 3);
  auto j = random_borel(rng, nv(rng), 3);
  if (out) *out = j;
  auto ord = TermOrder::degrevlex(j.nvars());
  return stratum_ideal(j, tails(j, ord, TailMode::Homogeneous), ord, opts);
}

}  // namespace

TEST_CASE("h is independent of strategy and pair selection") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    MonomialIdeal j;
    auto a = random_stratum(rng, {}, &j);
    auto ord = TermOrder::degrevlex(j.nvars());
    StratumOptions o;
    o.strategy = ReductionStrategy::random(trial + 100);
    o.pairs.prune = false;
    auto b = stratum_ideal(j, tails(j, ord, TailMode::Homogeneous), ord, o);
    auto co = a.family.vars.order();
    CHECK(ideal_equal(a.h_polys(), b.h_polys(), co));
  }
}

TEST_CASE("stratum invariants on random Borel ideals") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    auto res = random_stratum(rng, {});
    const auto& vars = res.family.vars;
    // lambda-homogeneity and positivity of every variable
    for (const auto& g : res.h) CHECK(vars.lambda_degree(g.poly) == g.lambda);
    for (const auto& g : res.linear) {
      CHECK(g.poly.total_degree() == 1);
      CHECK(vars.lambda_degree(g.poly) == g.lambda);
    }
    // L is spanned by the linear parts of h
    std::vector<CPoly> lin_h;
    for (const auto& g : res.h)
      if (!g.poly.linear_part().is_zero()) lin_h.push_back(g.poly.linear_part());
    auto both = lin_h;
    for (const auto& g : res.linear) both.push_back(g.poly);
    CHECK(linear_rank(lin_h) == linear_rank(res.linear_polys()));
    CHECK(linear_rank(both) == linear_rank(lin_h));
    // origin is in the stratum
    std::vector<Rational> zero(vars.size(), 0);
    CHECK(check_point(res.family, zero));
    for (const auto& g : res.h) CHECK(g.poly.constant_term() == 0);
  }
}

TEST_CASE("check_point agrees with membership in V(h)") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> val(-2, 2);
  int on = 0, off = 0;
  for (int trial = 0; trial < 10; ++trial) {
    auto res = random_stratum(rng, {});
    const auto& vars = res.family.vars;
    for (int s = 0; s < 8; ++s) {
      std::vector<Rational> pt(vars.size());
      // sparse points hit the stratum more often
      for (auto& x : pt) x = val(rng) == 0 ? Qv(val(rng)) : Qv(0);
      bool in = true;
      for (const auto& g : res.h)
        if (g.poly.evaluate([&](Var v) { return pt[v]; }) != 0) in = false;
      CHECK(check_point(res.family, pt) == in);
      (in ? on : off)++;
    }
  }
  CHECK(on > 0);
  CHECK(off > 0);
}

TEST_CASE("orders with equal tails give equal strata") {
  // In two variables every degree-compatible order agrees on each degree.
  auto j = ideal(2, {"X1^3", "X1^2*X0"});
  auto a = TermOrder::lex(2), b = TermOrder::degrevlex(2);
  auto ta = tails(j, a, TailMode::Homogeneous), tb = tails(j, b, TailMode::Homogeneous);
  REQUIRE(ta.tails == tb.tails);
  auto ra = stratum_ideal(j, ta, a), rb = stratum_ideal(j, tb, b);
  CHECK(ra.h_polys() == rb.h_polys());
}

TEST_CASE("mixed elimination order") {
  auto ord = elimination_order(TermOrder::degrevlex(2), COrder::degrevlex());
  MixedMonomial x0{xy("X0"), CMonomial()};
  MixedMonomial c2{xy("1"), CMonomial::variable(0, 2)};
  CHECK(ord.compare(x0, c2) > 0);
  MixedMonomial a{xy("X1^3"), CMonomial()}, b{xy("X1^2*X0"), CMonomial()};
  CHECK(ord.compare(a, b) == TermOrder::degrevlex(2).compare(a.x, b.x));
  MixedMonomial c{xy("1"), CMonomial::variable(1)}, d{xy("1"), CMonomial::variable(0)};
  CHECK(ord.compare(c, d) == COrder::degrevlex().compare(c.c, d.c));
}

TEST_CASE("ParamPoly arithmetic") {
  auto ord = std::make_shared<const TermOrder>(TermOrder::lex(2));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> e(0, 3), c(-3, 3), v(0, 2);
  auto rnd = [&]() {
    ParamPoly p(ord);
    for (int k = 0; k < 5; ++k)
      p.add(Monomial({e(rng), e(rng)}), CPoly(Qv(c(rng))) * Cv(v(rng)) + CPoly(Qv(c(rng))));
    return p;
  };
  for (int k = 0; k < 20; ++k) {
    auto p = rnd(), q = rnd();
    CHECK((p + q) - q == p);
    for (const auto& [m, cf] : p.terms()) CHECK(!cf.is_zero());
  }
}
