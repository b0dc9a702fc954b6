#include <random>
#include <set>

#include "doctest.h"
#include "gstrata/borel.hpp"
#include "gstrata/embedding.hpp"
#include "gstrata/errors.hpp"
#include "gstrata/groebner.hpp"
#include "gstrata/levels.hpp"
#include "test_support.hpp"

using namespace gstrata;
using namespace testing_support;

namespace {

const MonomialIdeal xsq_xy = ideal(2, {"X1^2", "X1*X0"});

struct Case {
  MonomialIdeal j;
  TermOrder ord;
  TailMode mode;
};

// Random Borel ideal in 2 or 3 variables; Full tails only under DegRevLex,
// where they are always allowed.
Case random_case(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nv(2, 3), coin(0, 1);
  auto j = random_borel(rng, nv(rng), 3);
  auto ord = coin(rng) ? TermOrder::degrevlex(j.nvars()) : TermOrder::lex(j.nvars());
  TailMode mode = TailMode::Homogeneous;
  if (ord.kind() == TermOrder::Kind::DegRevLex && coin(rng)) mode = TailMode::Full;
  return {j, ord, mode};
}

std::set<Var> as_set(const std::vector<Var>& v) { return {v.begin(), v.end()}; }

// The oracle: explicit h, then L by row reduction, then iterated substitution.
MinimalEmbedding explicit_embedding(const StratumResult& res) {
  auto split = eliminable_split(res.linear_polys(), res.family.vars.size());
  return minimal_embedding(res.h_polys(), split, res.family.vars);
}

}  // namespace

TEST_CASE("raw level reduction reproduces h") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    auto c = random_case(rng);
    auto res = stratum_ideal(c.j, tails(c.j, c.ord, c.mode), c.ord);
    const auto& fam = res.family;
    LevelOptions lo;
    lo.substitute = false;
    for (auto strat : {ReductionStrategy::first(), ReductionStrategy::last(), ReductionStrategy::random(trial)}) {
      auto lr = run_levels(fam, spair_seeds(fam, res.pairs), reducer_choice(fam, strat), lo);
      std::vector<CPoly> got;
      for (const auto& g : lr.generators) {
        CHECK(fam.vars.lambda_degree(g.poly) == g.lambda);
        got.push_back(g.poly);
      }
      CHECK(ideal_equal(got, res.h_polys(), fam.vars.order()));
    }
  }
}

TEST_CASE("raw level reduction matches reduce_complete term by term") {
  // Same reducer choice: every X-coefficient must agree exactly.
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    auto c = random_case(rng);
    auto res = stratum_ideal(c.j, tails(c.j, c.ord, c.mode), c.ord);
    const auto& fam = res.family;
    LevelOptions lo;
    lo.substitute = false;
    auto lr = run_levels(fam, spair_seeds(fam, res.pairs), reducer_choice(fam, ReductionStrategy::first()), lo);
    std::vector<StratumGenerator> direct;
    for (std::size_t p = 0; p < res.pairs.size(); ++p) {
      auto r = reduce_complete(s_polynomial(fam, res.pairs[p]), fam.F, ReductionStrategy::first());
      for (const auto& [m, coef] : r.terms()) direct.push_back({coef, {}, p, m});
    }
    auto key = [](const StratumGenerator& g) { return std::make_pair(g.pair, g.xmono); };
    std::map<std::pair<std::size_t, Monomial>, CPoly> a, b;
    for (const auto& g : lr.generators) a[key(g)] = g.poly;
    for (const auto& g : direct) b[key(g)] = g.poly;
    CHECK(a == b);
  }
}

TEST_CASE("eliminable_split") {
  // L = (C1 + C0, C2) in 3 variables: largest variables are pivots.
  auto s = eliminable_split({Cv(1) + Cv(0), Cv(2)}, 3);
  CHECK(s.eliminable == std::vector<Var>{2, 1});
  CHECK(s.surviving == std::vector<Var>{0});
  CHECK(s.ed() == 1);
  CHECK(s.basis[1] == Cv(1) + Cv(0));
  auto t = eliminable_split({Cv(1) + Cv(0), Cv(2)}, 3, 7);
  CHECK(t.ed() == 1);
  CHECK_THROWS_AS(eliminable_split({Cv(0) * Cv(1)}, 2), InternalError);
}

TEST_CASE("minimal_embedding on small ideals") {
  SUBCASE("C1 + C2^2 with C' = {C1}") {
    // homogeneous (x^2, xy) under Lex: var 1 = c1_1, var 0 = c2_1
    auto fam = generic_generators(xsq_xy, TermOrder::lex(2), tails(xsq_xy, TermOrder::lex(2), TailMode::Homogeneous));
    EmbeddingSplit split{{1}, {0}, {Cv(1)}};
    auto me = minimal_embedding({Cv(1) + Cv(0) * Cv(0)}, split, fam.vars);
    CHECK(me.ideal.empty());
    CHECK(me.ed == 1);
    CHECK(me.is_affine_space);
    CHECK(me.dimension == 1);
    CHECK(me.eliminated.at(1) == -(Cv(0) * Cv(0)));
  }
  SUBCASE("double point") {
    auto fam = generic_generators(xsq_xy, TermOrder::lex(2), custom_tails(xsq_xy, TermOrder::lex(2),
                                                                          {{}, {parse_monomial("X0", 2)}}));
    auto me = minimal_embedding({Cv(0) * Cv(0)}, EmbeddingSplit{{}, {0}, {}}, fam.vars);
    REQUIRE(me.ideal.size() == 1);
    CHECK(me.ideal[0].poly == Cv(0) * Cv(0));
    CHECK(me.ed == 1);
    CHECK_FALSE(me.is_affine_space);
    CHECK(me.dimension == 0);
  }
  SUBCASE("zero ideal") {
    auto j = ideal(3, {"X2^2"});
    auto fam = generic_generators(j, TermOrder::degrevlex(3), tails(j, TermOrder::degrevlex(3), TailMode::Homogeneous));
    auto me = minimal_embedding({}, eliminable_split({}, fam.vars.size()), fam.vars);
    CHECK(me.is_affine_space);
    CHECK(me.ed == fam.vars.size());
    CHECK(me.dimension == static_cast<int>(fam.vars.size()));
  }
}

TEST_CASE("level engine embedding agrees with the explicit one") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    auto c = random_case(rng);
    auto res = stratum_ideal(c.j, tails(c.j, c.ord, c.mode), c.ord);
    const auto& vars = res.family.vars;
    auto a = explicit_embedding(res);
    auto b = embed_stratum(res.family);
    CHECK(a.ed == b.ed);
    CHECK(a.surviving == b.surviving);
    CHECK(a.dimension == b.dimension);
    CHECK(ideal_equal(a.ideal_polys(), b.ideal_polys(), vars.order()));
    // the embedding ideal generates h ∩ Q[C'']
    std::set<Var> drop;
    for (Var v = 0; v < vars.size(); ++v)
      if (!as_set(b.surviving).count(v)) drop.insert(v);
    CHECK(ideal_equal(eliminate(res.h_polys(), drop, vars.order()), b.ideal_polys(), vars.order()));
    // the eliminated variables really are functions on the stratum
    auto gb = groebner_basis(res.h_polys(), vars.order());
    for (const auto& [v, expr] : b.eliminated) {
      CHECK(expr.variables().size() <= b.surviving.size());
      for (Var w : expr.variables()) CHECK(as_set(b.surviving).count(w));
      CHECK(normal_form(Cv(v) - expr, gb, vars.order()).is_zero());
    }
  }
}

TEST_CASE("embedding invariants") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 12; ++trial) {
    auto c = random_case(rng);
    auto res = stratum_ideal(c.j, tails(c.j, c.ord, c.mode), c.ord);
    const auto& vars = res.family.vars;
    auto me = embed_stratum(res.family);

    // ed = |C| - rank L
    CHECK(me.ed == vars.size() - linear_rank(res.linear_polys()));

    // criterion_scan lies in L
    auto scan = criterion_scan(res.family);
    auto both = res.linear_polys();
    both.insert(both.end(), scan.begin(), scan.end());
    CHECK(linear_rank(both) == linear_rank(res.linear_polys()));

    // affine <=> zero ideal <=> ed = dim h
    std::set<Var> all;
    for (Var v = 0; v < vars.size(); ++v) all.insert(v);
    int dim_h = res.h.empty() ? static_cast<int>(vars.size()) : krull_dimension(res.h_polys(), all, vars.order());
    CHECK(me.dimension == dim_h);
    CHECK(me.is_affine_space == me.ideal.empty());
    CHECK(me.is_affine_space == (static_cast<int>(me.ed) == dim_h));

    // random pivot tie-breaks change C'' but not ed or the dimension
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      EmbeddingOptions o;
      o.solver.tie_seed = seed;
      auto other = embed_stratum(res.family, o);
      CHECK(other.ed == me.ed);
      CHECK(other.dimension == me.dimension);
      auto split = eliminable_split(res.linear_polys(), vars.size(), seed);
      CHECK(split.ed() == me.ed);
    }

    // pair pruning and reduction order do not matter
    EmbeddingOptions o;
    o.pairs.prune = false;
    o.prefer_linear_pairs = false;
    o.strategy = ReductionStrategy::random(trial);
    auto other = embed_stratum(res.family, o);
    CHECK(other.surviving == me.surviving);
    CHECK(ideal_equal(other.ideal_polys(), me.ideal_polys(), vars.order()));
  }
}

TEST_CASE("linear_syzygies") {
  CHECK(linear_syzygies({parse_monomial("X1^2", 2), parse_monomial("X1*X0", 2), parse_monomial("X0^2", 2)}));
  CHECK_FALSE(linear_syzygies({parse_monomial("X1^2", 2), parse_monomial("X0^2", 2)}));
  CHECK_FALSE(linear_syzygies({parse_monomial("X1^2", 2), parse_monomial("X0", 2)}));
  // truncations of Borel ideals in their generating degree have linear syzygies
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto j = random_borel(rng, 3, 3);
    int r = j.max_generator_degree();
    auto t = j.truncate(r);
    CHECK(linear_syzygies(t.generators()));
  }
}

TEST_CASE("linear pair selection gives the same embedding") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 8; ++trial) {
    auto j = random_borel(rng, 3, 3);
    auto t = j.truncate(j.max_generator_degree());
    auto ord = TermOrder::degrevlex(3);
    auto fam = generic_generators(t, ord, tails(t, ord, TailMode::Homogeneous));
    EmbeddingOptions all, lin;
    all.prefer_linear_pairs = false;
    lin.pairs.only_next_degree = true;
    auto a = embed_stratum(fam, all), b = embed_stratum(fam, lin);
    CHECK(a.surviving == b.surviving);
    CHECK(ideal_equal(a.ideal_polys(), b.ideal_polys(), fam.vars.order()));
  }
}

TEST_CASE("truncation_isomorphism_check") {
  auto j0 = ideal(3, {"X2", "X1^2"});
  auto ord = TermOrder::degrevlex(3);
  CHECK(truncation_isomorphism_check(j0, 2, 2, ord).isomorphic);
  auto rep = truncation_isomorphism_check(j0, 2, 4, ord);
  CHECK(rep.isomorphic);
  CHECK(rep.ed_s == rep.ed_m);
  CHECK(rep.vars_m > rep.vars_s);

  CHECK_THROWS_AS(truncation_isomorphism_check(j0, 3, 2, ord), PreconditionError);
  CHECK_THROWS_AS(truncation_isomorphism_check(ideal(3, {"X2*X0"}), 2, 3, ord), PreconditionError);
  CHECK_THROWS_AS(truncation_isomorphism_check(ideal(3, {"X1^2"}), 2, 3, ord), PreconditionError);
  // X1 in a generator of degree > s
  CHECK_THROWS_AS(truncation_isomorphism_check(ideal(3, {"X2", "X1^3"}), 2, 4, ord), PreconditionError);
}

TEST_CASE("only the saturated generators keep free variables") {
  // Some choice of C'' uses only variables of the F_i whose leading monomial
  // is a generator of j0 times a power of X0.
  std::mt19937_64 rng(53);
  auto ord = TermOrder::degrevlex(3);
  int checked = 0;
  for (int trial = 0; trial < 20 && checked < 6; ++trial) {
    auto j0 = random_borel(rng, 3, 3).saturate();
    if (j0.is_unit() || !is_borel_fixed(j0)) continue;
    int r = j0.max_generator_degree() + 1;
    auto j = j0.truncate(r);
    auto fam = generic_generators(j, ord, tails(j, ord, TailMode::Homogeneous));
    std::set<Monomial> saturated;
    for (const auto& a : j0.generators()) saturated.insert(a * Monomial::variable(3, 0, r - a.degree()));
    EmbeddingOptions o;
    for (Var v = 0; v < fam.vars.size(); ++v)
      if (!saturated.count(fam.tails.leading[fam.vars[v].generator - 1])) o.solver.preferred.insert(v);
    auto me = embed_stratum(fam, o);
    CHECK(me.ed == embed_stratum(fam).ed);
    for (Var v : me.surviving) CHECK(saturated.count(fam.tails.leading[fam.vars[v].generator - 1]));
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("evaluation mode agrees with the symbolic embedding") {
  std::mt19937_64 rng(59);
  int refuted = 0, confirmed = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto c = random_case(rng);
    auto fam = generic_generators(c.j, c.ord, tails(c.j, c.ord, c.mode));
    auto me = embed_stratum(fam);
    EmbeddingOptions o;
    o.evaluation_seed = static_cast<std::uint64_t>(trial) + 1;
    auto rep = evaluate_embedding(fam, o);
    CHECK(rep.ed == me.ed);
    CHECK(rep.surviving == me.surviving);
    CHECK(rep.vanishes == me.ideal.empty());
    if (rep.vanishes) {
      ++confirmed;
      CHECK(rep.error_bound < 1e-12);
    } else {
      ++refuted;
      CHECK(rep.error_bound == 0);
    }
  }
  CHECK(confirmed > 0);

  // known non-affine strata
  std::vector<GenericFamily> fams;
  fams.push_back(generic_generators(xsq_xy, TermOrder::lex(2),
                                    custom_tails(xsq_xy, TermOrder::lex(2), {{}, {parse_monomial("X0", 2)}})));
  auto b4 = ideal(4, {"X3^2", "X3*X2", "X3*X1^2", "X2^4"}).truncate(3);
  auto w4 = TermOrder::segment_weight({15, 5, 2, 1});
  fams.push_back(generic_generators(b4, w4, tails(b4, w4, TailMode::Homogeneous)));
  for (const auto& fam : fams) {
    auto me = embed_stratum(fam);
    REQUIRE_FALSE(me.ideal.empty());
    auto rep = evaluate_embedding(fam);
    CHECK_FALSE(rep.vanishes);
    CHECK(rep.ed == me.ed);
    CHECK(rep.error_bound == 0);
    ++refuted;
  }
  CHECK(refuted >= 2);
}

TEST_CASE("embed_or_evaluate falls back on budget") {
  auto j = ideal(3, {"X2^2", "X2*X1", "X1^3"});
  auto ord = TermOrder::degrevlex(3);
  auto fam = generic_generators(j, ord, tails(j, ord, TailMode::Homogeneous));
  auto exact = embed_or_evaluate(fam);
  CHECK(exact.certificate == "symbolic");
  CHECK(exact.ideal_known);
  EmbeddingOptions tight;
  tight.max_terms = 1;
  auto ev = embed_or_evaluate(fam, tight);
  CHECK(ev.certificate == "evaluation");
  CHECK_FALSE(ev.ideal_known);
  CHECK(ev.ed == exact.ed);
  CHECK(ev.is_affine_space == exact.is_affine_space);
}

TEST_CASE("positive_functional") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    auto c = random_case(rng);
    auto fam = generic_generators(c.j, c.ord, tails(c.j, c.ord, c.mode));
    auto w = positive_functional(fam.vars);
    for (Var v = 0; v < fam.vars.size(); ++v) {
      long long s = 0;
      for (std::size_t x = 0; x < w.size(); ++x) s += w[x] * fam.vars[v].lambda[x];
      CHECK(s > 0);
    }
  }
}
