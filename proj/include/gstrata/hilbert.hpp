#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "gstrata/monomial_ideal.hpp"

namespace gstrata {

/// Univariate polynomial in z with rational coefficients; coeffs[k] is the
/// coefficient of z^k. Trailing zeros are trimmed.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<mpq_class> coeffs);
  static UniPoly constant(const mpq_class& c) { return UniPoly({c}); }
  /// binomial(z + shift, k) as a polynomial in z.
  static UniPoly binomial_in_z(long long shift, int k);
  /// Parses integer-coefficient expressions in z: "4*z", "z^2+3*z-1", "7".
  static UniPoly parse(std::string_view text);

  const std::vector<mpq_class>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  mpq_class leading() const { return c_.empty() ? mpq_class(0) : c_.back(); }
  mpq_class operator()(const mpq_class& z) const;
  bool integer_valued() const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;

  std::string to_string() const;
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

struct HilbertOptions {
  /// Largest degree the interpolation window may reach.
  int max_window_degree = 400;
};

struct HilbertData {
  /// values[k] = h(window_start + k)
  int window_start = 0;
  std::vector<long long> values;
  UniPoly polynomial;
  /// Smallest d with h(e) = p(e) for all e >= d.
  int stabilization_degree = 0;
};

/// Hilbert series numerator N(t) of k[X]/j: HS(t) = N(t) / (1 - t)^(n+1).
std::vector<long long> hilbert_numerator(const MonomialIdeal& j);

/// Number of degree-d monomials not in j.
long long hilbert_function(const MonomialIdeal& j, int d);

HilbertData hilbert_polynomial(const MonomialIdeal& j, const HilbertOptions& opts = {});

struct GotzmannOptions {
  long long max_terms = 10'000'000;
};

/// Number of summands in the Gotzmann representation
///   p(z) = sum_{i=1..r} binomial(z + b_i - i + 1, b_i),  b_1 >= ... >= b_r >= 0.
/// Throws PreconditionError when p has no such representation.
long long gotzmann_number(const UniPoly& p, const GotzmannOptions& opts = {});

struct GotzmannParams {
  long long r = 0;
  long long M = 0, t = 0, M1 = 0, t1 = 0;
};

/// r, M = C(n+r, n), t = M - p(r), M1 = C(n+r+1, n), t1 = M1 - p(r+1) for
/// P^n (so nvars = n + 1).
GotzmannParams gotzmann_params(const UniPoly& p, std::size_t nvars);

}  // namespace gstrata
