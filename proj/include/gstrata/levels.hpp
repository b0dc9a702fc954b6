#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "gstrata/cpoly.hpp"
#include "gstrata/stratum.hpp"

namespace gstrata {

/// Pivot rules for the graded substitution.
struct SolverOptions {
  /// Variables that must stay in C''.
  std::set<Var> forced_free;
  /// When set, only these variables may become pivots.
  std::optional<std::set<Var>> allowed;
  /// Replaces the "largest variable first" pivot preference by a random one.
  std::optional<std::uint64_t> tie_seed;
  /// Tried as pivots before all other variables.
  std::set<Var> preferred;
  /// Evaluation mode: every variable that stays free is replaced, as soon as
  /// its lambda-degree is done, by a random integer in [-2^(bits-1), 2^(bits-1)).
  std::optional<std::uint64_t> evaluate_seed;
  unsigned value_bits = 60;
};

/// Elimination of variables by substitution, one lambda-degree at a time.
///
/// Every batch handed to solve() must consist of polynomials of a single
/// lambda-degree d, batches must arrive in increasing d, and all solutions of
/// lower degrees must already have been applied. The linear parts of a batch
/// then only involve variables of degree d, and any nonlinear term only
/// variables of lower degree; row reduction of the batch on its linear part
/// solves a maximal set of degree-d variables, and the rows with no linear
/// part left are generators of h ∩ Q[C''].
class GradedSolver {
 public:
  GradedSolver(const StratumVars& vars, SolverOptions opts = {});

  bool is_solved(Var v) const { return solved_.at(v); }
  /// The expression of v in the free variables (v itself when free).
  const CPoly& image(Var v) const { return image_.at(v); }
  CPoly apply(const CPoly& p) const;

  void solve(std::vector<StratumGenerator> batch);
  /// Evaluation mode only: fixes the free variables of lambda-key <= key
  /// (< key when not inclusive). Freezing strictly below a degree before its
  /// batch is built keeps products with lower variables from looking linear.
  void freeze_through(const std::vector<long long>& key, bool inclusive = true);

  const std::vector<StratumGenerator>& residual() const { return residual_; }
  std::map<Var, CPoly> solutions() const;
  std::vector<Var> free_vars() const;
  /// Values given to free variables in evaluation mode.
  const std::map<Var, Rational>& point() const { return point_; }

 private:
  const StratumVars* vars_;
  SolverOptions opts_;
  std::vector<char> solved_;
  std::vector<CPoly> image_;
  std::vector<std::size_t> rank_;  // pivot preference, larger first
  std::vector<StratumGenerator> residual_;
  std::map<Var, Rational> point_;
  std::vector<Var> by_key_;  // variables by lambda-key, for freeze_through
  std::size_t frozen_upto_ = 0;
  std::mt19937_64 rng_;
};

/// One polynomial to be completely reduced: its X-coefficient at X^mu is
/// lambda-homogeneous of degree top - mu.
struct Seed {
  Monomial top;
  std::vector<std::pair<Monomial, CPoly>> terms;
  std::size_t origin = 0;  ///< reported in the generators' `pair` field
};

/// For X^mu in j, the index l of the generator F_l used to reduce it.
using ReducerChoice = std::function<std::size_t(const Monomial&)>;

ReducerChoice reducer_choice(const GenericFamily& fam, const ReductionStrategy& s);

struct LevelOptions {
  /// false: plain complete reduction, every surviving X-coefficient is kept.
  bool substitute = true;
  SolverOptions solver;
  /// Upper bound on the number of (seed, X-monomial) cells visited.
  std::size_t max_cells = 20'000'000;
  /// Upper bound on the total number of term products formed.
  std::size_t max_terms = 50'000'000;
};

struct LevelResult {
  /// substitute == false: the X-coefficients of the complete reductions.
  std::vector<StratumGenerator> generators;
  /// substitute == true
  std::map<Var, CPoly> solutions;
  std::vector<Var> free_vars;
  std::vector<StratumGenerator> residual;
  /// Evaluation mode: the values of the free variables.
  std::map<Var, Rational> point;
  /// lambda-degree of the last level processed.
  std::vector<int> top_degree;
  /// lambda-degrees of the batches handed to the solver.
  std::vector<std::vector<int>> batch_degrees;
  std::size_t cells = 0;
  std::size_t terms = 0;
};

/// Reduces all seeds together, one lambda-degree at a time. Reducing the
/// coefficient of X^mu in j by F_l only moves it to strictly larger degrees,
/// so every coefficient of degree d is final once the lower degrees are done.
/// In substitute mode each degree is solved before its coefficients are
/// propagated, so all polynomials carried along live in Q[C''].
LevelResult run_levels(const GenericFamily& fam, const std::vector<Seed>& seeds, const ReducerChoice& choose,
                       const LevelOptions& opts = {});

/// Seeds for the S-polynomials of the given pairs.
std::vector<Seed> spair_seeds(const GenericFamily& fam, const std::vector<SPair>& pairs);

}  // namespace gstrata
