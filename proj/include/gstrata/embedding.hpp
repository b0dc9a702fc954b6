#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gstrata/groebner.hpp"
#include "gstrata/levels.hpp"
#include "gstrata/stratum.hpp"

namespace gstrata {

/// C = C' ⊔ C'' with L ⊕ span(C'') = span(C).
struct EmbeddingSplit {
  std::vector<Var> eliminable;  ///< C'
  std::vector<Var> surviving;   ///< C''
  /// Reduced row echelon form of L; basis[k] has coefficient 1 at eliminable[k]
  /// and no other eliminable variable.
  std::vector<CPoly> basis;
  std::size_t ed() const { return surviving.size(); }
};

/// Row reduction of the linear forms L over `nvars` variables. Pivots are
/// taken largest variable first (the canonical C-order), or in a random
/// variable order when `tie_seed` is set.
EmbeddingSplit eliminable_split(const std::vector<CPoly>& L, std::size_t nvars,
                                std::optional<std::uint64_t> tie_seed = std::nullopt);

/// Elements of L read off directly from the S-polynomials: C_{i,b} when
/// X^{d+b} is outside j and X^{d+b-e} is not in F_k, C_{i,b} - C_{k,b'} when
/// X^{d+b-e} = X^{b'} is a tail monomial of F_k.
std::vector<CPoly> criterion_scan(const GenericFamily& fam, const std::vector<SPair>& pairs);
std::vector<CPoly> criterion_scan(const GenericFamily& fam);

struct MinimalEmbedding {
  std::vector<Var> surviving;          ///< C''
  std::map<Var, CPoly> eliminated;     ///< v in C' -> its expression in C''
  std::vector<StratumGenerator> ideal; ///< generators of h ∩ Q[C'']
  std::size_t ed = 0;
  int dimension = 0;
  bool is_affine_space = false;
  /// false when only the evaluation test was run; `ideal` is then empty and
  /// meaningless unless is_affine_space holds.
  bool ideal_known = true;
  /// "symbolic" or "evaluation"
  std::string certificate = "symbolic";
  /// Evaluation certificate: bound on the probability that is_affine_space
  /// is wrong. 0 for symbolic results and for refutations.
  double error_bound = 0;

  std::vector<CPoly> ideal_polys() const;
};

struct EmbeddingOptions {
  PairOptions pairs;
  /// Use only the pairs of lcm degree r+1 when they generate the syzygies
  /// (checked, see linear_syzygies).
  bool prefer_linear_pairs = true;
  ReductionStrategy strategy;
  SolverOptions solver;
  std::size_t max_cells = 20'000'000;
  std::size_t max_terms = 50'000'000;
  bool compute_dimension = true;
  GBOptions gb;
  /// embed_or_evaluate: number of random points and their size.
  std::size_t evaluation_trials = 2;
  unsigned value_bits = 60;
  std::uint64_t evaluation_seed = 1;
};

/// Minimal embedding of an explicit lambda-homogeneous ideal of a stratum:
/// substitution degree by degree with pivots restricted to split.eliminable,
/// Groebner elimination for whatever is left.
MinimalEmbedding minimal_embedding(const std::vector<CPoly>& h, const EmbeddingSplit& split, const StratumVars& vars,
                                   const EmbeddingOptions& opts = {});

/// Same result computed directly from the generic generators, without ever
/// writing h down: the S-polynomials are reduced one lambda-degree at a time
/// with the eliminable variables substituted as soon as they are solved.
MinimalEmbedding embed_stratum(const GenericFamily& fam, const EmbeddingOptions& opts = {});
MinimalEmbedding embed_seeds(const GenericFamily& fam, const std::vector<Seed>& seeds, const ReducerChoice& choose,
                             const EmbeddingOptions& opts = {});

/// Decides h ∩ Q[C''] = 0 without computing it: the level reduction is run
/// with the free variables set to random integers (exact rational arithmetic),
/// and every residual must vanish. A nonzero residual proves the ideal is
/// nonzero. If all vanish at `trials` independent points, the ideal is zero
/// except with probability at most (D / 2^bits)^trials, D a bound on the
/// total degree of the residuals read off from the lambda-grading.
struct EvaluationReport {
  std::vector<Var> surviving;
  std::size_t ed = 0;
  bool vanishes = false;
  std::size_t trials = 0;
  unsigned value_bits = 0;
  long long degree_bound = 0;
  double error_bound = 1;
};

EvaluationReport evaluate_embedding(const GenericFamily& fam, const EmbeddingOptions& opts = {});

/// The same test for an explicit generating set of h (for instance the
/// entries of a reduced coefficient matrix): graded substitution of
/// split.eliminable with the free variables set to random integers.
EvaluationReport evaluate_ideal(const std::vector<CPoly>& h, const EmbeddingSplit& split, const StratumVars& vars,
                                const EmbeddingOptions& opts = {});

/// embed_stratum, falling back to evaluate_embedding when the symbolic
/// computation exceeds its term budget.
MinimalEmbedding embed_or_evaluate(const GenericFamily& fam, const EmbeddingOptions& opts = {});

/// A random rational point of the stratum: the level reduction in evaluation
/// mode with the given seed, free variables drawn with `value_bits` bits.
/// nullopt when some residual did not vanish at the drawn values.
std::optional<std::vector<Rational>> sample_stratum_point(const GenericFamily& fam, std::uint64_t seed,
                                                          unsigned value_bits = 8,
                                                          const EmbeddingOptions& opts = {});

/// A linear functional positive on the lambda-degree of every variable, built
/// from the rows of the X-order.
std::vector<long long> positive_functional(const StratumVars& vars);

/// True when every pair syzygy of the (single degree r) generators is a
/// combination of pair syzygies of degree r+1, certified by a chain of
/// degree r+1 pairs among the generators dividing the lcm.
bool linear_syzygies(const std::vector<Monomial>& gens);

/// Fills dimension / is_affine_space / ed from the ideal.
void finish_embedding(MinimalEmbedding& me, const StratumVars& vars, const EmbeddingOptions& opts);

struct TruncationReport {
  bool isomorphic = false;
  std::string reason;
  std::size_t vars_s = 0, vars_m = 0;
  std::size_t ed_s = 0, ed_m = 0;
};

/// Compares St_h(j0_{>=s}) and St_h(j0_{>=m}) under the identification
/// C_{g,b} -> C_{g X0^k, b X0^k} (k = m - deg g for generators of degree < m).
/// Requires j0 saturated and Borel-fixed, X1 absent from the generators of j0
/// of degree > s, and checks the one-step lifting conditions on the way from
/// s to m, stopping at the first failure with a PreconditionError.
TruncationReport truncation_isomorphism_check(const MonomialIdeal& j0, int s, int m, const TermOrder& ord,
                                              const EmbeddingOptions& opts = {});

/// Renames variables of `p` through `map` (every variable must be mapped).
CPoly rename_vars(const CPoly& p, const std::map<Var, Var>& map);

}  // namespace gstrata
