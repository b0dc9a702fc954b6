#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "gstrata/monomial.hpp"
#include "gstrata/term_order.hpp"

namespace gstrata {

using Rational = mpq_class;
using Var = std::uint32_t;

/// A monomial in the parameter variables C, stored sparsely as (var, exp)
/// pairs sorted by variable index.
class CMonomial {
 public:
  using Factor = std::pair<Var, std::uint32_t>;

  CMonomial() = default;
  /// Factors may be unsorted and repeated; zero exponents are dropped.
  explicit CMonomial(std::vector<Factor> factors);
  static CMonomial variable(Var v, std::uint32_t e = 1);

  std::span<const Factor> factors() const { return f_; }
  std::uint32_t degree() const { return deg_; }
  std::uint32_t exponent(Var v) const;
  bool is_one() const { return f_.empty(); }
  bool divides(const CMonomial& other) const;
  bool coprime_with(const CMonomial& other) const;

  CMonomial operator*(const CMonomial& other) const;
  CMonomial operator/(const CMonomial& other) const;
  CMonomial lcm(const CMonomial& other) const;
  /// Removes every occurrence of v.
  CMonomial without(Var v) const;

  friend bool operator==(const CMonomial& a, const CMonomial& b) { return a.f_ == b.f_; }

 private:
  std::vector<Factor> f_;
  std::uint32_t deg_ = 0;
};

struct CMonomialHash {
  std::size_t operator()(const CMonomial& m) const noexcept;
};

/// Per-variable data the lambda-graded orders need.
struct LambdaTable {
  TermOrder xorder;
  /// lambda-degree of each variable as an integer vector indexed like X.
  std::vector<std::vector<int>> degrees;
  /// xorder.key(degrees[v]); cached.
  std::vector<std::vector<long long>> keys;

  LambdaTable(TermOrder order, std::vector<std::vector<int>> lambda_degrees);
  std::vector<int> degree_of(const CMonomial& m) const;
};

/// A term order on C-monomials. Variable index order is significant: a higher
/// index is a larger variable.
///
///  - Lex, DegRevLex: the usual orders.
///  - Lambda: first by lambda-degree (compared in the X-order), then FEWER
///    factors first (so a linear term leads any product of equal lambda-degree),
///    then DegRevLex. Well defined because the lambda grading is positive.
///  - Elimination: a block order; monomials are first compared on the `drop`
///    variables with DegRevLex, then on the rest with `base`.
class COrder {
 public:
  enum class Kind { Lex, DegRevLex, Lambda, Elimination };

  static COrder lex();
  static COrder degrevlex();
  static COrder lambda(std::shared_ptr<const LambdaTable> table);
  static COrder elimination(std::set<Var> drop, const COrder& base);

  Kind kind() const { return kind_; }
  const std::shared_ptr<const LambdaTable>& lambda_table() const { return table_; }
  const std::set<Var>& drop() const { return drop_; }
  const COrder& base() const { return *base_; }

  std::strong_ordering compare(const CMonomial& a, const CMonomial& b) const;

  /// Integer weight rows over `vars` (ascending Var order) realising this
  /// order as a matrix order: a < b iff the row dot products compare <lex.
  /// Columns whose `active` flag is false are left zero.
  std::vector<std::vector<long long>> matrix(const std::vector<Var>& vars,
                                             const std::vector<bool>& active) const;

  friend bool operator==(const COrder& a, const COrder& b);

 private:
  explicit COrder(Kind k) : kind_(k) {}
  Kind kind_;
  std::shared_ptr<const LambdaTable> table_;
  std::set<Var> drop_;
  std::shared_ptr<const COrder> base_;
};

std::strong_ordering degrevlex_compare(const CMonomial& a, const CMonomial& b);

struct CTerm {
  CMonomial mono;
  Rational coef;
};

/// Sparse polynomial in the C variables over Q. Terms are kept sorted
/// descending in DegRevLex with no zero coefficients (canonical form).
class CPoly {
 public:
  CPoly() = default;
  CPoly(const Rational& c);  // NOLINT(google-explicit-constructor): constants convert naturally
  CPoly(long c) : CPoly(Rational(c)) {}  // NOLINT
  CPoly(int c) : CPoly(Rational(c)) {}   // NOLINT
  static CPoly variable(Var v);
  static CPoly monomial(CMonomial m, Rational c = 1);
  /// Builds from arbitrary terms (combines duplicates, drops zeros, sorts).
  static CPoly from_terms(std::vector<CTerm> terms);

  const std::vector<CTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rational constant_term() const;
  std::uint32_t total_degree() const;
  /// Smallest standard degree of any term (0 for the zero polynomial).
  std::uint32_t low_degree() const;
  std::set<Var> variables() const;
  bool contains_var(Var v) const;

  /// Homogeneous component of standard degree k.
  CPoly component(std::uint32_t k) const;
  CPoly linear_part() const { return component(1); }
  /// Coefficient of the bare variable v in the linear part.
  Rational linear_coefficient(Var v) const;

  CPoly operator-() const;
  CPoly& operator+=(const CPoly& o);
  CPoly& operator-=(const CPoly& o);
  CPoly& operator*=(const Rational& c);
  friend CPoly operator+(CPoly a, const CPoly& b) { return a += b; }
  friend CPoly operator-(CPoly a, const CPoly& b) { return a -= b; }
  friend CPoly operator*(const CPoly& a, const CPoly& b);
  friend CPoly operator*(CPoly a, const Rational& c) { return a *= c; }
  CPoly times(const CMonomial& m, const Rational& c = 1) const;
  /// a += c * m * b, in place.
  void add_scaled(const CPoly& b, const Rational& c, const CMonomial& m);

  /// Ring homomorphism sending v -> image for every mapped variable.
  CPoly substitute(const std::map<Var, CPoly>& images) const;
  /// Same, with `image` returning nullptr for variables left alone.
  CPoly substitute(const std::function<const CPoly*(Var)>& image) const;
  Rational evaluate(const std::function<Rational(Var)>& value) const;
  CPoly derivative(Var v) const;

  /// Primitive integer multiple with positive leading coefficient.
  CPoly normalized() const;
  /// Exact quotient by `d`; returns nullopt-like empty flag via `ok`.
  CPoly divide_exact(const CPoly& d, bool& ok) const;

  std::string to_string(const std::function<std::string(Var)>& name) const;

  friend bool operator==(const CPoly& a, const CPoly& b);

 private:
  std::vector<CTerm> terms_;
};

/// Terms of `p` reordered descending under `ord` (for leading-term queries).
std::vector<CTerm> sorted_terms(const CPoly& p, const COrder& ord);
const CTerm& leading_term(const CPoly& p, const COrder& ord);

/// A fixed total order on polynomials (term by term in DegRevLex, then by
/// coefficient), used to sort generator lists deterministically.
bool canonical_less(const CPoly& a, const CPoly& b);

/// Gaussian elimination on the linear parts; returns the rank.
std::size_t linear_rank(const std::vector<CPoly>& linear_forms);

}  // namespace gstrata
