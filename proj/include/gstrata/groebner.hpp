#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "gstrata/cpoly.hpp"

namespace gstrata {

struct GBOptions {
  /// Maximum number of S-pair reductions before BudgetExceeded is thrown.
  std::size_t max_steps = 2'000'000;
};

/// Reduced Groebner basis: monic under `ord`, sorted by ascending leading
/// monomial. The zero ideal gives the empty list, the unit ideal {1}.
std::vector<CPoly> groebner_basis(const std::vector<CPoly>& gens, const COrder& ord,
                                  const GBOptions& opts = {});

/// Full normal form of f modulo `basis` (any generating list; the result is
/// canonical only when `basis` is a Groebner basis for `ord`).
CPoly normal_form(const CPoly& f, const std::vector<CPoly>& basis, const COrder& ord);

bool ideal_equal(const std::vector<CPoly>& a, const std::vector<CPoly>& b, const COrder& ord,
                 const GBOptions& opts = {});

/// Membership test against a Groebner basis.
bool in_ideal(const CPoly& f, const std::vector<CPoly>& gb, const COrder& ord);

/// Generators of I ∩ Q[remaining variables] (a Groebner basis of it).
std::vector<CPoly> eliminate(const std::vector<CPoly>& gens, const std::set<Var>& drop,
                             const COrder& base, const GBOptions& opts = {});

/// (I : f). Rejects f = 0.
std::vector<CPoly> ideal_quotient(const std::vector<CPoly>& gens, const CPoly& f,
                                  const COrder& ord, const GBOptions& opts = {});

/// Dimension of V(I) inside the affine space on `ambient` variables, from the
/// leading-term supports of a Groebner basis. Returns -1 for the unit ideal.
int krull_dimension(const std::vector<CPoly>& gens, const std::set<Var>& ambient, const COrder& ord,
                    const GBOptions& opts = {});

/// Minimum number of variables meeting every given support (exact search).
std::size_t min_hitting_set(std::vector<std::set<Var>> supports);

/// An ideal of Q[C] with a lazily computed reduced basis for one order.
class CIdeal {
 public:
  CIdeal() = default;
  explicit CIdeal(std::vector<CPoly> gens);

  const std::vector<CPoly>& generators() const { return gens_; }
  bool is_zero() const;
  std::set<Var> variables() const;
  const std::vector<CPoly>& basis(const COrder& ord, const GBOptions& opts = {}) const;

 private:
  std::vector<CPoly> gens_;
  mutable std::optional<std::vector<CPoly>> basis_;
  mutable std::optional<COrder> basis_order_;
};

}  // namespace gstrata
