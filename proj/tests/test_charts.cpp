#include <random>
#include <set>

#include "doctest.h"
#include "gstrata/borel.hpp"
#include "gstrata/charts.hpp"
#include "gstrata/errors.hpp"
#include "gstrata/groebner.hpp"
#include "chart_fixtures.hpp"
#include "test_support.hpp"

using namespace gstrata;
using namespace testing_support;

namespace {

// dim of the degree-d part of the ideal generated by degree-r polynomials,
// given as monomial -> coefficient maps.
std::size_t degree_dimension(const std::vector<std::map<Monomial, Rational>>& polys, std::size_t nvars, int r, int d) {
  auto cols = monomials_of_degree(nvars, d);
  std::map<Monomial, std::size_t> idx;
  for (std::size_t c = 0; c < cols.size(); ++c) idx[cols[c]] = c;
  QMatrix m;
  for (const auto& shift : monomials_of_degree(nvars, d - r))
    for (const auto& p : polys) {
      std::vector<Rational> row(cols.size());
      for (const auto& [mono, c] : p) row[idx.at(mono * shift)] = c;
      m.push_back(std::move(row));
    }
  return rational_rank(std::move(m));
}

// The generators G_i of a chart specialized at a point.
std::vector<std::map<Monomial, Rational>> specialized_generators(const ChartVariables& cv,
                                                                 const std::vector<Rational>& pt) {
  std::vector<std::map<Monomial, Rational>> out;
  for (std::size_t i = 0; i < cv.family.tails.leading.size(); ++i) {
    std::map<Monomial, Rational> g;
    g[cv.family.tails.leading[i]] = 1;
    for (std::size_t k = 0; k < cv.tails[i].size(); ++k)
      if (pt[cv.var_of[i][k]] != 0) g[cv.tails[i][k]] = pt[cv.var_of[i][k]];
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-9, 9);
  std::vector<Rational> p(n);
  for (auto& x : p) x = Qv(d(rng));
  return p;
}

}  // namespace

TEST_CASE("build_matrix shape and rows") {
  auto j6 = lexsegment_ideal({0, 4, 2}).truncate(6);
  auto lex = TermOrder::lex(4);
  auto mx = build_matrix(j6, lex, ChartMode::Stratum);
  // t = C(9,3) - p(6), M1 = C(10,3), t1 = M1 - p(7) for p(z) = 4z
  CHECK(mx.t == static_cast<std::size_t>(binomial(9, 3) - 24));
  CHECK(mx.M1 == static_cast<std::size_t>(binomial(10, 3)));
  CHECK(mx.t1 == mx.M1 - 28);
  CHECK(mx.rows() == 4 * 60);
  CHECK(mx.cols() == 120);

  const auto& lead = mx.chart.family.tails.leading;
  for (std::size_t r = 0; r < mx.rows(); ++r) {
    const auto& lab = mx.row_labels[r];
    const Monomial top = lead[lab.generator] * Monomial::variable(4, lab.x);
    for (std::size_t c = 0; c < mx.cols(); ++c) {
      if (mx.columns[c] == top) CHECK(mx.entries[r][c] == CPoly(1));
      if (lex.compare(mx.columns[c], top) > 0) CHECK(mx.entries[r][c].is_zero());
    }
  }

  // a segment ideal has no complement monomial above a generator
  auto chart = build_matrix(j6, lex, ChartMode::Chart);
  CHECK(chart.chart.extra().empty());
  CHECK(chart.entries == mx.entries);

  CHECK_THROWS_AS(build_matrix(ideal(3, {"X2", "X1^2"}), TermOrder::lex(3), ChartMode::Stratum), PreconditionError);
  // p = 1 has Gotzmann number 1, not 2
  CHECK_THROWS_AS(build_matrix(ideal(3, {"X2", "X1"}).truncate(2), TermOrder::lex(3), ChartMode::Stratum),
                  PreconditionError);
}

TEST_CASE("block_reduce") {
  SUBCASE("empty tails give R = 0") {
    auto j = ideal(2, {"X0"});
    auto mx = build_matrix(j, TermOrder::lex(2), ChartMode::Stratum);
    CHECK(mx.vars().size() == 0);
    auto bf = block_reduce(mx);
    CHECK(bf.h_generators().empty());
    CHECK(bf.pivot_rows.size() == mx.t1);
  }
  SUBCASE("tiny chart with r forced") {
    auto j = ideal(2, {"X1^2", "X1*X0"});
    MatrixOptions o;
    o.check_gotzmann = false;
    auto ord = TermOrder::lex(2);
    auto mx = build_matrix(j, ord, ChartMode::Chart, o);
    auto bf = block_reduce(mx);
    auto st = stratum_ideal(j, tails(j, ord, TailMode::Homogeneous), ord);
    CHECK(ideal_equal(bf.h_generators(), st.h_polys(), COrder::degrevlex()));
    CHECK_FALSE(bf.h_generators().empty());
    auto minors = minors_ideal(mx);
    CHECK(ideal_equal(minors.generators(), st.h_polys(), COrder::degrevlex()));
  }
  SUBCASE("blocks") {
    auto j = lexsegment_ideal({0, 2}).truncate(2);
    auto mx = build_matrix(j, TermOrder::degrevlex(3), ChartMode::Stratum);
    auto bf = block_reduce(mx);
    REQUIRE(bf.D.size() == mx.t1);
    for (std::size_t a = 0; a < bf.D.size(); ++a)
      for (std::size_t b = 0; b <= a; ++b) CHECK(bf.D[a][b] == CPoly(a == b ? 1 : 0));
    for (const auto& l : bf.linear_part()) CHECK(l.total_degree() == 1);
    CHECK(bf.other_rows.size() + bf.pivot_rows.size() == mx.rows());
  }
}

TEST_CASE("minors_ideal") {
  CMatrix m = {{CPoly(1), Cv(0)}, {CPoly(), Cv(0) * Cv(0)}};
  auto I = minors_ideal(m, 2);
  CHECK(ideal_equal(I.generators(), {Cv(0) * Cv(0)}, COrder::degrevlex()));

  CMatrix c = {{CPoly(1), CPoly(2), CPoly(3)}, {CPoly(2), CPoly(4), CPoly(6)}, {CPoly(0), CPoly(1), CPoly(1)}};
  CHECK(minors_ideal(c, 3).is_zero());
  CHECK_FALSE(minors_ideal(c, 2).is_zero());

  MinorsOptions tiny;
  tiny.max_minors = 3;
  CHECK_THROWS_AS(minors_ideal(c, 2, tiny), BudgetExceeded);
}

TEST_CASE("matrix path equals the Buchberger path") {
  auto fx = hilb_fixtures();
  REQUIRE(fx.size() >= 10);
  std::size_t with_minors = 0, nonzero = 0;
  for (const auto& f : fx) {
    CAPTURE(f.j.to_string());
    CAPTURE(f.ord.name());
    auto mx = build_matrix(f.j, f.ord, ChartMode::Stratum);
    auto bf = block_reduce(mx);
    auto st = stratum_ideal(f.j, mx.chart.family.tails, f.ord);
    const COrder co = mx.vars().order();
    CHECK(ideal_equal(bf.h_generators(), st.h_polys(), co));
    CHECK(linear_rank(bf.linear_part()) == linear_rank(st.linear_polys()));
    if (!st.h.empty()) ++nonzero;
    const long long count = binomial(static_cast<long long>(mx.rows()), static_cast<long long>(mx.t1 + 1)) *
                            binomial(static_cast<long long>(mx.cols()), static_cast<long long>(mx.t1 + 1));
    if (count > 0 && count <= 3000) {
      auto minors = minors_ideal(mx);
      CHECK(ideal_equal(minors.generators(), bf.h_generators(), co));
      ++with_minors;
    }
  }
  CHECK(with_minors >= 3);
  MESSAGE("fixtures ", fx.size(), ", nonzero h ", nonzero, ", minors checked ", with_minors);
}

TEST_CASE("chart matrix rank, persistence and covering") {
  std::mt19937_64 rng(11);
  for (const auto& f : hilb_fixtures()) {
    CAPTURE(f.j.to_string());
    CAPTURE(f.ord.name());
    auto chart = build_matrix(f.j, f.ord, ChartMode::Chart);
    // Macaulay growth bound on the whole chart
    for (int k = 0; k < 3; ++k) {
      auto pt = random_point(rng, chart.vars().size());
      CHECK(rational_rank(specialize(chart.entries, pt)) >= chart.t1);
    }
    // points of the stratum, extended by zero, lie in V(b(j)) and satisfy persistence
    const auto& fam = chart.chart.family;
    const UniPoly p = hilbert_polynomial(f.j).polynomial;
    for (std::uint64_t s = 1; s <= 3; ++s) {
      auto sp = sample_stratum_point(fam, s, 6);
      REQUIRE(sp.has_value());
      std::vector<Rational> pt(chart.vars().size());
      for (std::size_t v = 0; v < sp->size(); ++v) pt[v] = (*sp)[v];
      CHECK(rational_rank(specialize(chart.entries, pt)) == chart.t1);
      auto g = specialized_generators(chart.chart, pt);
      const std::size_t nv = f.j.nvars();
      const int r = chart.r;
      for (int d = r + 1; d <= r + 2; ++d) {
        const long long expected = binomial(static_cast<long long>(nv) - 1 + d, static_cast<long long>(nv) - 1) -
                                   static_cast<long long>(p(Qv(d)).get_num().get_si());
        CHECK(static_cast<long long>(degree_dimension(g, nv, r, d)) == expected);
      }
    }
  }
}

TEST_CASE("plucker_compare") {
  auto ord = TermOrder::degrevlex(3);
  auto j = lexsegment_ideal({0, 2}).truncate(2);  // p = 2, r = 2, t = 4
  CHECK(plucker_compare(j, j, ord) == std::strong_ordering::equal);

  // all t-subsets of degree-2 monomials: the segment is the maximum
  auto mons = monomials_of_degree(3, 2);
  sort_descending(mons, ord);
  std::vector<MonomialIdeal> subsets;
  for (unsigned mask = 0; mask < (1u << mons.size()); ++mask) {
    if (__builtin_popcount(mask) != 4) continue;
    std::vector<Monomial> g;
    for (std::size_t k = 0; k < mons.size(); ++k)
      if (mask & (1u << k)) g.push_back(mons[k]);
    subsets.emplace_back(3, g);
  }
  MonomialIdeal segment(3, {mons[0], mons[1], mons[2], mons[3]});
  for (const auto& s : subsets) CHECK(plucker_compare(segment, s, ord) >= 0);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, subsets.size() - 1);
  for (int k = 0; k < 200; ++k) {
    const auto &a = subsets[pick(rng)], &b = subsets[pick(rng)], &c = subsets[pick(rng)];
    auto ab = plucker_compare(a, b, ord), ba = plucker_compare(b, a, ord);
    CHECK((ab == 0) == (a == b));
    CHECK((ab < 0) == (ba > 0));
    if (ab <= 0 && plucker_compare(b, c, ord) <= 0) CHECK(plucker_compare(a, c, ord) <= 0);
  }

  // swapping a generator for a larger complement monomial moves up
  auto w = ideal(3, {"X2^2", "X2*X1", "X1^2", "X1*X0"});
  auto up = ideal(3, {"X2^2", "X2*X1", "X1^2", "X2*X0"});
  CHECK(plucker_compare(up, w, ord) > 0);
  CHECK_THROWS_AS(plucker_compare(w, ideal(3, {"X2^2"}), ord), PreconditionError);
}

TEST_CASE("locally_closed_embedding") {
  auto ord = TermOrder::degrevlex(3);
  SUBCASE("segment ideal") {
    auto j = lexsegment_ideal({0, 2}).truncate(2);
    auto lc = locally_closed_embedding(j, ord);
    CHECK(lc.chart.extra().empty());
    CHECK(ideal_equal(lc.ideal.generators(), lc.stratum_ideal, lc.chart.vars.order()));
  }
  SUBCASE("one complement monomial above a generator") {
    // X2*X0 is outside and above X1*X0
    auto j = ideal(3, {"X2^2", "X2*X1", "X1^2", "X1*X0"});
    auto lc = locally_closed_embedding(j, ord);
    REQUIRE(lc.chart.extra().size() == 1);
    const Var e = lc.chart.extra()[0];
    CHECK(lc.chart.vars[e].tail == parse_monomial("X2*X0", 3));
    CHECK(lc.ideal.generators().size() == lc.stratum_ideal.size() + 1);
    const COrder deg = COrder::degrevlex();
    auto back = eliminate(lc.ideal.generators(), {e}, deg);
    CHECK(ideal_equal(back, lc.stratum_ideal, deg));
  }
}

TEST_CASE("component_analysis") {
  SUBCASE("zero ideal") {
    auto j = ideal(3, {"X2", "X1^2"});
    auto ord = TermOrder::lex(3);
    auto fam = generic_generators(j, ord, tails(j, ord, TailMode::Homogeneous));
    auto me = embed_stratum(fam);
    REQUIRE(me.is_affine_space);
    auto rep = component_analysis(me, fam.vars);
    CHECK_FALSE(rep.common_factor.has_value());
    REQUIRE(rep.parts.size() == 1);
    CHECK(rep.parts[0].dimension == static_cast<int>(me.ed));
    CHECK(rep.parts[0].is_affine_space);
  }
  SUBCASE("product of two variables has no single shared factor") {
    StratumVars vars(TermOrder::lex(2), {{1, 1, parse_monomial("X0", 2), {1, -1}},
                                          {2, 1, parse_monomial("X0", 2), {1, -1}}});
    MinimalEmbedding me;
    me.surviving = {0, 1};
    me.ideal = {{Cv(0) * Cv(1), {2, -2}, 0, {}}};
    finish_embedding(me, vars, {});
    auto rep = component_analysis(me, vars);
    CHECK_FALSE(rep.common_factor.has_value());
    REQUIRE(rep.parts.size() == 1);
    CHECK(rep.parts[0].dimension == 1);
    CHECK_FALSE(rep.parts[0].is_affine_space);
  }
  SUBCASE("b4 truncated in degree 3") {
    auto b4 = ideal(4, {"X3^2", "X3*X2", "X3*X1^2", "X2^4"}).truncate(3);
    auto w = TermOrder::segment_weight({15, 5, 2, 1});
    auto fam = generic_generators(b4, w, tails(b4, w, TailMode::Homogeneous));
    CHECK(fam.vars.size() == 12 * 8 + 16);
    auto me = embed_stratum(fam);
    CHECK(me.ed == 24);
    auto rep = component_analysis(me, fam.vars);
    REQUIRE(rep.common_factor.has_value());
    REQUIRE(rep.parts.size() == 2);
    CHECK(rep.parts[0].dimension == 23);
    CHECK(rep.parts[1].dimension == 16);
    CHECK(rep.parts[0].is_affine_space);
    CHECK(rep.parts[1].is_affine_space);
    REQUIRE(rep.intersection_dimension.has_value());
    CHECK(*rep.intersection_dimension == 23 + 16 - 24);
    CHECK(rep.dimension_additive);
    REQUIRE(rep.transversal.has_value());
    CHECK(*rep.transversal);
    // every generator of h vanishes on both parts: h is inside (K) ∩ (h : K)
    const COrder co = fam.vars.order();
    for (const auto& g : me.ideal_polys()) {
      CHECK(in_ideal(g, rep.parts[0].ideal, co));
      CHECK(in_ideal(g, rep.parts[1].ideal, co));
    }
  }
}

TEST_CASE("lexsegment chart: matrix path and family path agree") {
  auto j6 = lexsegment_ideal({0, 4, 2}).truncate(6);
  auto lex = TermOrder::lex(4);
  auto mx = build_matrix(j6, lex, ChartMode::Stratum);
  auto bf = block_reduce(mx);
  auto h = bf.h_generators();
  std::vector<CPoly> lin;
  for (const auto& p : h)
    if (!p.linear_part().is_zero()) lin.push_back(p.linear_part());
  auto split = eliminable_split(lin, mx.vars().size());
  CHECK(split.ed() == 23);
  CHECK(linear_rank(bf.linear_part()) == mx.vars().size() - 23);
  auto by_matrix = evaluate_ideal(h, split, mx.vars());
  auto by_family = evaluate_embedding(mx.chart.family);
  CHECK(by_matrix.vanishes);
  CHECK(by_family.vanishes);
  CHECK(by_family.surviving == split.surviving);
  CHECK(by_matrix.error_bound < 1e-20);
  for (std::uint64_t s = 1; s <= 3; ++s) {
    auto pt = sample_stratum_point(mx.chart.family, s);
    REQUIRE(pt.has_value());
    for (const auto& p : h) CHECK(p.evaluate([&](Var v) { return (*pt)[v]; }) == 0);
    CHECK(check_point(mx.chart.family, *pt));
  }
}
