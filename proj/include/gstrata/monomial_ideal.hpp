#pragma once

#include <string>
#include <vector>

#include "gstrata/monomial.hpp"
#include "gstrata/term_order.hpp"

namespace gstrata {

/// A monomial ideal of k[X_0, ..., X_n] held by its minimal generators.
///
/// Generators are stored descending in DegRevLex (a fixed canonical order);
/// use sorted_generators(ord) for another order.
class MonomialIdeal {
 public:
  MonomialIdeal() = default;
  /// Minimalizes `gens`. An empty list is the zero ideal.
  MonomialIdeal(std::size_t nvars, std::vector<Monomial> gens);

  static MonomialIdeal unit(std::size_t nvars);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Monomial>& generators() const { return gens_; }
  std::vector<Monomial> sorted_generators(const TermOrder& ord) const;
  std::size_t size() const { return gens_.size(); }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const;

  bool contains(const Monomial& m) const;
  int max_generator_degree() const;
  int min_generator_degree() const;
  /// True when every minimal generator has degree d.
  bool generated_in_degree(int d) const;

  /// Degree-d monomials inside / outside the ideal (DegRevLex descending).
  std::vector<Monomial> degree_part(int d) const;
  std::vector<Monomial> complement(int d) const;

  MonomialIdeal colon(const Monomial& m) const;
  MonomialIdeal intersect(const MonomialIdeal& other) const;
  MonomialIdeal operator+(const MonomialIdeal& other) const;

  /// (j : m^infinity) for the irrelevant ideal m, by iterated colon.
  MonomialIdeal saturate() const;
  bool is_saturated() const { return saturate() == *this; }
  /// The ideal generated by the elements of degree >= m.
  MonomialIdeal truncate(int m) const;

  std::string to_string() const;

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
    return a.nvars_ == b.nvars_ && a.gens_ == b.gens_;
  }

 private:
  std::size_t nvars_ = 0;
  std::vector<Monomial> gens_;
};

}  // namespace gstrata
