#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "gstrata/borel.hpp"
#include "gstrata/cpoly.hpp"
#include "gstrata/monomial.hpp"
#include "gstrata/monomial_ideal.hpp"

namespace testing_support {

using namespace gstrata;

inline MonomialIdeal ideal(std::size_t n, std::initializer_list<const char*> gens) {
  std::vector<Monomial> g;
  for (const char* s : gens) g.push_back(parse_monomial(s, n));
  return MonomialIdeal(n, std::move(g));
}

inline Rational Qv(long long v) { return Rational(static_cast<long>(v)); }

inline CPoly Cv(Var v) { return CPoly::variable(v); }

/// Borel closure of a few random monomials of degree <= maxdeg.
inline MonomialIdeal random_borel(std::mt19937_64& rng, std::size_t n, int maxdeg, int max_seeds = 3) {
  std::uniform_int_distribution<int> deg(1, maxdeg), cnt(1, max_seeds);
  std::vector<Monomial> gens;
  int k = cnt(rng);
  for (int i = 0; i < k; ++i) {
    auto ms = monomials_of_degree(n, deg(rng));
    std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
    Monomial seed = ms[pick(rng)];
    for (const auto& m : ms)
      if (borel_geq(m, seed)) gens.push_back(m);
  }
  return MonomialIdeal(n, gens);
}

}  // namespace testing_support
