#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gstrata/cpoly.hpp"
#include "gstrata/monomial.hpp"
#include "gstrata/term_order.hpp"

namespace gstrata {

/// A polynomial in X with coefficients in Q[C]. Terms are kept in a map
/// ordered descending by the X-order; zero coefficients never appear.
class ParamPoly {
 public:
  using TermMap = std::map<Monomial, CPoly, Descending>;

  explicit ParamPoly(std::shared_ptr<const TermOrder> ord);

  const std::shared_ptr<const TermOrder>& order() const { return ord_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Largest X-monomial; precondition: nonzero.
  const Monomial& leading_monomial() const;
  const CPoly& leading_coefficient() const;
  /// Zero when absent.
  const CPoly& coefficient(const Monomial& m) const;

  void add(const Monomial& m, const CPoly& c);
  /// this -= c * X^shift * f
  void sub_multiple(const CPoly& c, const Monomial& shift, const ParamPoly& f);
  ParamPoly times(const Monomial& shift) const;

  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }

  std::vector<CPoly> x_coefficients() const;
  /// Substitutes rational values for every C variable.
  std::map<Monomial, Rational> specialize(const std::function<Rational(Var)>& value) const;

  std::string to_string(const std::function<std::string(Var)>& name) const;
  friend bool operator==(const ParamPoly& a, const ParamPoly& b);

 private:
  std::shared_ptr<const TermOrder> ord_;
  TermMap terms_;
};

/// A monomial in X and C together.
struct MixedMonomial {
  Monomial x;
  CMonomial c;
};

/// Block order on X ∪ C: the X-parts are compared first with the X-order, the
/// C-parts break ties. Any monomial with an X factor is above every pure
/// C-monomial because 1 is the X-order minimum.
class MixedOrder {
 public:
  MixedOrder(TermOrder x, COrder c) : x_(std::move(x)), c_(std::move(c)) {}
  const TermOrder& x_order() const { return x_; }
  const COrder& c_order() const { return c_; }
  std::strong_ordering compare(const MixedMonomial& a, const MixedMonomial& b) const;

 private:
  TermOrder x_;
  COrder c_;
};

MixedOrder elimination_order(const TermOrder& x, const COrder& c);

}  // namespace gstrata
