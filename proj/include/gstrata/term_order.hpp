#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "gstrata/monomial.hpp"

namespace gstrata {

/// A term order on monomials of k[X_0, ..., X_n] with X_n > ... > X_0.
///
/// Weight-matrix rows are given in the same layout as the bracket monomial
/// syntax: column 0 is X_n, the last column is X_0. A weight order always has
/// the all-ones row first (one is prepended if missing) and must have full
/// rank n+1.
///
/// Every order here also compares arbitrary integer vectors (compare_vectors);
/// this is the ordered-group extension used for lambda-degrees gamma - alpha.
class TermOrder {
 public:
  enum class Kind { Lex, DegRevLex, Weight };

  static TermOrder lex(std::size_t nvars);
  static TermOrder degrevlex(std::size_t nvars);
  static TermOrder weight(std::size_t nvars, std::vector<std::vector<long long>> rows);
  /// The 1 / w / unit-row matrix used for segment searches: rows are
  /// (1,...,1), w, then unit rows selecting X_{n-2}, ..., X_0.
  /// `w` is listed X_n first.
  static TermOrder segment_weight(const std::vector<long long>& w);

  Kind kind() const { return kind_; }
  std::size_t nvars() const { return nvars_; }
  /// Rows in bracket layout (X_n first). Empty for Lex/DegRevLex.
  std::vector<std::vector<long long>> rows() const;

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  std::strong_ordering compare_vectors(std::span<const int> a, std::span<const int> b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  /// Linear key with key(a) <lex key(b) iff a < b; valid for integer vectors.
  std::vector<long long> key(std::span<const int> v) const;

  std::string name() const;

  friend bool operator==(const TermOrder&, const TermOrder&) = default;

 private:
  TermOrder(Kind k, std::size_t n) : kind_(k), nvars_(n) {}
  Kind kind_;
  std::size_t nvars_;
  std::vector<std::vector<long long>> index_rows_;  // column i = X_i
};

/// Orders monomials descending (largest first) under a TermOrder.
struct Descending {
  const TermOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->compare(a, b) > 0; }
};

/// Sorts descending by the order.
void sort_descending(std::vector<Monomial>& ms, const TermOrder& ord);

}  // namespace gstrata
