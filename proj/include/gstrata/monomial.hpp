#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gstrata {

/// A monomial X^a = X_0^{a_0} ... X_n^{a_n} in the ring k[X_0, ..., X_n].
///
/// Storage is indexed by variable: exponent(i) is the exponent of X_i. Note
/// that the *bracket* text syntax lists exponents from X_n down to X_0, so
/// `[2,0,1,0]` in four variables is X_3^2 * X_1.
///
/// The default three-way comparison is a plain container order (used for
/// std::map keys); it is NOT a term order. Use TermOrder::compare for that.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);

  static Monomial one(std::size_t nvars);
  static Monomial variable(std::size_t nvars, std::size_t index, int power = 1);

  std::size_t nvars() const { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  int degree() const { return degree_; }
  std::span<const int> exponents() const { return exps_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Exact quotient; throws PreconditionError when `other` does not divide.
  Monomial operator/(const Monomial& other) const;
  /// this * X_i^power / X_j^power with the result guaranteed non-negative.
  Monomial shifted(std::size_t from, std::size_t to) const;

  /// Multiplicative form, highest variable first: "X3^2*X1"; the unit is "1".
  std::string to_string() const;
  /// "[a_n,...,a_0]".
  std::string to_bracket() const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    return a.exps_ <=> b.exps_;
  }

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

struct LcmCofactors {
  Monomial lcm;
  Monomial left;   ///< lcm / a
  Monomial right;  ///< lcm / b
};

LcmCofactors lcm_and_cofactors(const Monomial& a, const Monomial& b);
Monomial gcd(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

/// Parses "X3^2*X1", "X0", "1" or the bracket form "[2,0,1,0]" (X_n first).
Monomial parse_monomial(std::string_view text, std::size_t nvars);

/// All monomials of total degree d in nvars variables (unspecified order).
std::vector<Monomial> monomials_of_degree(std::size_t nvars, int degree);

/// Binomial coefficient as a 64-bit value; throws on overflow.
long long binomial(long long n, long long k);

}  // namespace gstrata
