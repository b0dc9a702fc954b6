#pragma once

#include <optional>
#include <vector>

#include "gstrata/monomial_ideal.hpp"
#include "gstrata/term_order.hpp"

namespace gstrata {

/// Borel-fixed in characteristic zero with the convention X_n > ... > X_0:
/// X_i * X^g / X_{i-1} lies in j for every generator X^g with g_{i-1} > 0.
bool is_borel_fixed(const MonomialIdeal& j);

struct BorelExtremes {
  std::vector<Monomial> minimal_in_ideal;       ///< minimal elements of j_d
  std::vector<Monomial> maximal_in_complement;  ///< maximal degree-d monomials outside j
};

/// Extremes of the Borel partial order (transitive closure of
/// X^g >= X_i X^g / X_{i-1}) in degree d. Rejects non-Borel input.
BorelExtremes borel_extremes(const MonomialIdeal& j, int d);

/// True when a is above b in the Borel partial order (a reachable from b by
/// moves X_{i-1} -> X_i), including a == b.
bool borel_geq(const Monomial& a, const Monomial& b);

/// L(a_n, ..., a_1): every degree-r monomial (r = sum a) that is >= X_n^{a_n}...X_1^{a_1}
/// in Lex, in n + 1 variables.
MonomialIdeal lexsegment_ideal(const std::vector<int>& a);

/// min(generators) > max(degree-d complement) under ord. Rejects ideals not
/// generated in degree d.
bool is_segment(const MonomialIdeal& j, int d, const TermOrder& ord);

struct SegmentSearchOptions {
  /// Largest coordinate sum tried.
  long long max_sum = 120;
};

struct SegmentSearchResult {
  bool found = false;
  std::vector<long long> weight;  ///< (a_n, ..., a_0)
  /// When not found: a pair (beta in j, alpha outside) violated by every candidate tried.
  std::optional<std::pair<Monomial, Monomial>> certificate;
  long long candidates_tried = 0;
};

/// Does w (a_n..a_0) separate the Borel extremes: w.beta > w.alpha for each
/// minimal beta in j_d and maximal alpha outside.
bool weight_separates(const BorelExtremes& ex, const std::vector<long long>& w);

/// True when w has the admissible shape a_n > a_{n-1} > a_{n-2} >= ... >= a_0 >= 1
/// (the shape for which the 1 / w / unit-row matrix is a term order with X_n > ... > X_0).
bool admissible_segment_weight(const std::vector<long long>& w);

/// Bounded search over admissible weights by increasing coordinate sum.
SegmentSearchResult find_segment_order(const MonomialIdeal& j, int d, const SegmentSearchOptions& opts = {});

}  // namespace gstrata
