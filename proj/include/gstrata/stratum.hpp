#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gstrata/cpoly.hpp"
#include "gstrata/monomial_ideal.hpp"
#include "gstrata/param_poly.hpp"
#include "gstrata/term_order.hpp"

namespace gstrata {

enum class TailMode { Full, Homogeneous, Custom };

std::string to_string(TailMode m);
TailMode parse_tail_mode(const std::string& s);

/// Generators X^{gamma_i} (descending in the order) and their tails.
struct TailSpec {
  TailMode mode = TailMode::Homogeneous;
  std::vector<Monomial> leading;
  /// tails[i] lists the monomials of T_i, descending.
  std::vector<std::vector<Monomial>> tails;
};

/// Full: every monomial outside j below gamma_i. Only allowed when the tails
/// are bounded: a degree-compatible order, or Lex with j zero-dimensional.
/// Homogeneous: the monomials of degree |gamma_i| outside j below gamma_i.
TailSpec tails(const MonomialIdeal& j, const TermOrder& ord, TailMode mode);

/// User supplied tails, one list per generator in descending generator order.
TailSpec custom_tails(const MonomialIdeal& j, const TermOrder& ord,
                      std::vector<std::vector<Monomial>> lists);

/// Throws PreconditionError unless every tail monomial is outside j, below its
/// leading monomial and listed once.
void validate_tails(const MonomialIdeal& j, const TermOrder& ord, const TailSpec& t);

/// The coefficient C_{i,alpha} of X^alpha in F_i.
struct ParamVar {
  std::size_t generator = 0;  ///< 1-based
  std::size_t position = 0;   ///< 1-based position of alpha in T_i
  Monomial tail;
  std::vector<int> lambda;  ///< gamma_i - alpha, indexed like X
};

/// The C variables of a stratum, indexed by Var. They are sorted ascending
/// by lambda-degree in the X-order, then generator index, so a larger index
/// is a larger variable in every COrder.
class StratumVars {
 public:
  StratumVars() = default;
  StratumVars(const TermOrder& ord, std::vector<ParamVar> vars);

  std::size_t size() const { return vars_.size(); }
  const ParamVar& operator[](Var v) const { return vars_.at(v); }
  const std::vector<ParamVar>& all() const { return vars_; }
  /// "c{generator}_{position}"
  std::string name(Var v) const;
  std::function<std::string(Var)> namer() const;
  std::optional<Var> lookup(std::size_t generator, const Monomial& tail) const;
  std::optional<Var> by_name(const std::string& name) const;
  const std::shared_ptr<const LambdaTable>& lambda_table() const { return table_; }
  /// The lambda-graded order on Q[C].
  COrder order() const;
  /// lambda-degree of a lambda-homogeneous polynomial; nullopt when
  /// inhomogeneous or zero.
  std::optional<std::vector<int>> lambda_degree(const CPoly& p) const;

 private:
  std::vector<ParamVar> vars_;
  std::shared_ptr<const LambdaTable> table_;
};

struct GenericFamily {
  MonomialIdeal ideal;
  std::shared_ptr<const TermOrder> order;
  TailSpec tails;
  StratumVars vars;
  /// F_i = X^{gamma_i} + sum_alpha C_{i,alpha} X^alpha
  std::vector<ParamPoly> F;
  /// var_of[i][k]: the variable of tails[i][k]
  std::vector<std::vector<Var>> var_of;
};

GenericFamily generic_generators(const MonomialIdeal& j, const TermOrder& ord, const TailSpec& t);

struct SPair {
  std::size_t i = 0, k = 0;  ///< 0-based generator indices, i < k
  Monomial lcm;
  Monomial left;   ///< lcm / gamma_i
  Monomial right;  ///< lcm / gamma_k
};

struct PairOptions {
  /// Coprime and chain criteria.
  bool prune = true;
  /// Keep only pairs whose lcm has degree r + 1 (caller guarantees the
  /// syzygies are generated there).
  bool only_next_degree = false;
  /// Re-admit a random subset of pruned pairs (still a generating set).
  std::optional<std::uint64_t> reinsert_seed;
};

std::vector<SPair> spair_generators(const std::vector<Monomial>& leading, const PairOptions& opts = {});
std::vector<SPair> spair_generators(const MonomialIdeal& j, const TermOrder& ord, const PairOptions& opts = {});

ParamPoly s_polynomial(const GenericFamily& fam, const SPair& p);

struct ReductionStrategy {
  enum class Kind { FirstIndex, LastIndex, Random };
  Kind kind = Kind::FirstIndex;
  std::uint64_t seed = 0;
  static ReductionStrategy first() { return {}; }
  static ReductionStrategy last() { return {Kind::LastIndex, 0}; }
  static ReductionStrategy random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

/// Complete reduction: no X-monomial of the result is divisible by a
/// leading monomial of B. The leading coefficients of B must be 1.
ParamPoly reduce_complete(ParamPoly g, const std::vector<ParamPoly>& B, const ReductionStrategy& s = {});

/// Drops every term whose X-monomial lies in j.
ParamPoly reduce_mod_monomials(const ParamPoly& g, const MonomialIdeal& j);

struct StratumGenerator {
  CPoly poly;
  std::vector<int> lambda;
  std::size_t pair = 0;  ///< index into StratumResult::pairs
  Monomial xmono;        ///< X-monomial whose coefficient this is
};

struct StratumOptions {
  ReductionStrategy strategy;
  PairOptions pairs;
};

struct StratumResult {
  GenericFamily family;
  std::vector<SPair> pairs;
  /// Normalized, deduplicated, canonically sorted generators of h(j,T).
  std::vector<StratumGenerator> h;
  /// Spanning set of L(j,T), same conventions.
  std::vector<StratumGenerator> linear;

  std::vector<CPoly> h_polys() const;
  std::vector<CPoly> linear_polys() const;
};

StratumResult stratum_ideal(const MonomialIdeal& j, const TailSpec& t, const TermOrder& ord,
                            const StratumOptions& opts = {});

/// Sorts by lambda-degree, then canonical polynomial order, normalizing and
/// dropping zeros and duplicates.
void canonicalize_generators(std::vector<StratumGenerator>& gens, const StratumVars& vars);

/// Specializes the F_i at `point` (one value per variable) and checks with a
/// plain Buchberger test over Q[X] that they form a Groebner basis, i.e. that
/// the initial ideal of the specialized ideal is j.
bool check_point(const GenericFamily& fam, const std::vector<Rational>& point);

}  // namespace gstrata
