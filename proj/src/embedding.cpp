#include "gstrata/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "gstrata/borel.hpp"
#include "gstrata/errors.hpp"

namespace gstrata {

EmbeddingSplit eliminable_split(const std::vector<CPoly>& L, std::size_t nvars, std::optional<std::uint64_t> tie_seed) {
  std::vector<std::size_t> rank(nvars);
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  if (tie_seed) {
    std::mt19937_64 rng(*tie_seed);
    std::shuffle(rank.begin(), rank.end(), rng);
  }
  std::vector<Var> order(nvars);
  std::iota(order.begin(), order.end(), Var{0});
  std::sort(order.begin(), order.end(), [&](Var a, Var b) { return rank[a] > rank[b]; });

  std::vector<CPoly> rows;
  for (const auto& l : L) {
    GSTRATA_ASSERT(l.is_zero() || (l.low_degree() == 1 && l.total_degree() == 1), "L must consist of linear forms");
    if (!l.is_zero()) rows.push_back(l);
  }
  EmbeddingSplit out;
  std::vector<char> used(rows.size(), 0), pivot(nvars, 0);
  std::vector<std::size_t> pivot_rows;
  for (Var v : order) {
    std::size_t p = rows.size();
    for (std::size_t r = 0; r < rows.size() && p == rows.size(); ++r)
      if (!used[r] && rows[r].linear_coefficient(v) != 0) p = r;
    if (p == rows.size()) continue;
    used[p] = 1;
    pivot[v] = 1;
    rows[p] *= 1 / rows[p].linear_coefficient(v);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == p) continue;
      Rational a = rows[r].linear_coefficient(v);
      if (a != 0) rows[r].add_scaled(rows[p], -a, CMonomial());
    }
    out.eliminable.push_back(v);
    pivot_rows.push_back(p);
  }
  for (std::size_t p : pivot_rows) out.basis.push_back(rows[p]);
  for (Var v = 0; v < nvars; ++v)
    if (!pivot[v]) out.surviving.push_back(v);
  return out;
}

std::vector<CPoly> criterion_scan(const GenericFamily& fam, const std::vector<SPair>& pairs) {
  const auto& lead = fam.tails.leading;
  std::vector<CPoly> out;
  auto side = [&](std::size_t i, const Monomial& delta, std::size_t k, const Monomial& eta) {
    for (std::size_t b = 0; b < fam.tails.tails[i].size(); ++b) {
      const Monomial m = delta * fam.tails.tails[i][b];
      if (fam.ideal.contains(m)) continue;
      CPoly e = CPoly::variable(fam.var_of[i][b]);
      if (eta.divides(m)) {
        const Monomial rest = m / eta;
        const auto& tk = fam.tails.tails[k];
        auto it = std::find(tk.begin(), tk.end(), rest);
        if (it != tk.end()) e -= CPoly::variable(fam.var_of[k][static_cast<std::size_t>(it - tk.begin())]);
        GSTRATA_ASSERT(rest != lead[k], "tail multiple hits the leading monomial");
      }
      if (!e.is_zero()) out.push_back(e.normalized());
    }
  };
  for (const auto& p : pairs) {
    side(p.i, p.left, p.k, p.right);
    side(p.k, p.right, p.i, p.left);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<CPoly> criterion_scan(const GenericFamily& fam) {
  return criterion_scan(fam, spair_generators(fam.tails.leading));
}

std::vector<CPoly> MinimalEmbedding::ideal_polys() const {
  std::vector<CPoly> out;
  out.reserve(ideal.size());
  for (const auto& g : ideal) out.push_back(g.poly);
  return out;
}

void finish_embedding(MinimalEmbedding& me, const StratumVars& vars, const EmbeddingOptions& opts) {
  me.ed = me.surviving.size();
  me.is_affine_space = me.ideal.empty();
  if (me.is_affine_space) {
    me.dimension = static_cast<int>(me.ed);
    return;
  }
  if (!opts.compute_dimension) {
    me.dimension = -2;
    return;
  }
  std::set<Var> ambient(me.surviving.begin(), me.surviving.end());
  me.dimension = krull_dimension(me.ideal_polys(), ambient, vars.order(), opts.gb);
  // A nonzero ideal generated in positive lambda-degrees is proper and cuts
  // the dimension.
  GSTRATA_ASSERT(me.dimension >= 0 && static_cast<std::size_t>(me.dimension) < me.ed,
                 "nonzero embedding ideal of full dimension");
}

namespace {

// Leftover eliminable variables: eliminate them and require each to be
// solvable by a Groebner basis element whose leading term is the variable.
void eliminate_leftovers(MinimalEmbedding& me, const std::set<Var>& left, const StratumVars& vars,
                         const EmbeddingOptions& opts) {
  if (left.empty()) return;
  const COrder elim = COrder::elimination(left, vars.order());
  auto gb = groebner_basis(me.ideal_polys(), elim, opts.gb);
  for (Var v : left) {
    bool solved = false;
    for (const auto& g : gb) {
      const auto& lt = leading_term(g, elim);
      if (lt.mono == CMonomial::variable(v)) {
        CPoly rest = g * (1 / lt.coef) - CPoly::variable(v);
        bool clean = true;
        for (Var w : rest.variables()) clean = clean && !left.count(w);
        if (clean) {
          me.eliminated[v] = -rest;
          solved = true;
          break;
        }
      }
    }
    if (!solved) throw InternalError("eliminable variable " + vars.name(v) + " has no solving relation");
  }
  std::vector<StratumGenerator> kept;
  for (auto& g : gb) {
    bool touches = false;
    for (Var w : g.variables()) touches = touches || left.count(w);
    if (!touches) kept.push_back({g.normalized(), vars.lambda_degree(g).value_or(std::vector<int>{}), 0, {}});
  }
  me.ideal = std::move(kept);
  std::erase_if(me.surviving, [&](Var v) { return left.count(v) > 0; });
}

}  // namespace

MinimalEmbedding minimal_embedding(const std::vector<CPoly>& h, const EmbeddingSplit& split, const StratumVars& vars,
                                   const EmbeddingOptions& opts) {
  const auto& table = *vars.lambda_table();
  std::map<std::vector<long long>, std::vector<StratumGenerator>> batches;
  for (const auto& p : h) {
    if (p.is_zero()) continue;
    auto d = vars.lambda_degree(p);
    if (!d) throw PreconditionError("h is not lambda-homogeneous: " + p.to_string(vars.namer()));
    for (Var v : p.variables())
      if (v >= vars.size()) throw PreconditionError("h uses a variable outside the stratum");
    batches[table.xorder.key(*d)].push_back({p, *d, 0, {}});
  }
  SolverOptions so = opts.solver;
  so.allowed = std::set<Var>(split.eliminable.begin(), split.eliminable.end());
  GradedSolver solver(vars, so);
  for (auto& [key, batch] : batches) {
    for (auto& g : batch) g.poly = solver.apply(g.poly);
    solver.solve(std::move(batch));
  }
  MinimalEmbedding me;
  me.eliminated = solver.solutions();
  me.ideal = solver.residual();
  std::set<Var> left;
  for (Var v : solver.free_vars())
    if (so.allowed->count(v))
      left.insert(v);
    else
      me.surviving.push_back(v);
  for (Var v : left) me.surviving.push_back(v);
  std::sort(me.surviving.begin(), me.surviving.end());
  eliminate_leftovers(me, left, vars, opts);
  canonicalize_generators(me.ideal, vars);
  finish_embedding(me, vars, opts);
  return me;
}

bool linear_syzygies(const std::vector<Monomial>& gens) {
  if (gens.empty()) return true;
  const int r = gens.front().degree();
  for (const auto& g : gens)
    if (g.degree() != r) return false;
  const std::size_t t = gens.size();
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t k = i + 1; k < t; ++k) {
      const Monomial m = lcm_and_cofactors(gens[i], gens[k]).lcm;
      if (m.degree() <= r + 1) continue;
      std::vector<std::size_t> nodes;
      for (std::size_t l = 0; l < t; ++l)
        if (gens[l].divides(m)) nodes.push_back(l);
      std::vector<char> seen(t, 0);
      std::vector<std::size_t> stack{i};
      seen[i] = 1;
      while (!stack.empty() && !seen[k]) {
        std::size_t a = stack.back();
        stack.pop_back();
        for (std::size_t b : nodes)
          if (!seen[b] && lcm_and_cofactors(gens[a], gens[b]).lcm.degree() == r + 1) {
            seen[b] = 1;
            stack.push_back(b);
          }
      }
      if (!seen[k]) return false;
    }
  return true;
}

MinimalEmbedding embed_seeds(const GenericFamily& fam, const std::vector<Seed>& seeds, const ReducerChoice& choose,
                             const EmbeddingOptions& opts) {
  LevelOptions lo;
  lo.substitute = true;
  lo.solver = opts.solver;
  lo.max_cells = opts.max_cells;
  lo.max_terms = opts.max_terms;
  LevelResult lr = run_levels(fam, seeds, choose, lo);
  MinimalEmbedding me;
  me.surviving = std::move(lr.free_vars);
  me.eliminated = std::move(lr.solutions);
  me.ideal = std::move(lr.residual);
  canonicalize_generators(me.ideal, fam.vars);
  finish_embedding(me, fam.vars, opts);
  return me;
}

namespace {

std::vector<SPair> embedding_pairs(const GenericFamily& fam, const EmbeddingOptions& opts) {
  PairOptions po = opts.pairs;
  if (opts.prefer_linear_pairs && !po.only_next_degree && linear_syzygies(fam.tails.leading))
    po.only_next_degree = true;
  return spair_generators(fam.tails.leading, po);
}

long long dot(const std::vector<long long>& w, const std::vector<int>& v) {
  long long s = 0;
  for (std::size_t k = 0; k < v.size(); ++k) s += w[k] * v[k];
  return s;
}

}  // namespace

MinimalEmbedding embed_stratum(const GenericFamily& fam, const EmbeddingOptions& opts) {
  return embed_seeds(fam, spair_seeds(fam, embedding_pairs(fam, opts)), reducer_choice(fam, opts.strategy), opts);
}

std::vector<long long> positive_functional(const StratumVars& vars) {
  const auto& table = *vars.lambda_table();
  const std::size_t n = table.xorder.nvars();
  // Row k of the order is the linear form v -> key(v)[k].
  std::vector<std::vector<long long>> rows;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<int> e(n, 0);
    e[x] = 1;
    auto k = table.xorder.key(e);
    if (rows.empty()) rows.assign(k.size(), std::vector<long long>(n, 0));
    for (std::size_t r = 0; r < k.size(); ++r) rows[r][x] = k[r];
  }
  for (long long B = 2; B < (1LL << 20); B *= 2) {
    std::vector<long long> w(n, 0);
    for (const auto& row : rows) {
      for (std::size_t x = 0; x < n; ++x) w[x] = w[x] * B + row[x];
    }
    bool ok = true;
    for (Var v = 0; v < vars.size() && ok; ++v) ok = dot(w, vars[v].lambda) > 0;
    if (ok) return w;
  }
  throw InternalError("no positive functional for the lambda-grading");
}

EvaluationReport evaluate_embedding(const GenericFamily& fam, const EmbeddingOptions& opts) {
  const auto seeds = spair_seeds(fam, embedding_pairs(fam, opts));
  const auto choose = reducer_choice(fam, opts.strategy);
  const auto w = positive_functional(fam.vars);
  EvaluationReport rep;
  rep.value_bits = opts.value_bits;
  rep.vanishes = true;
  std::mt19937_64 seeder(opts.evaluation_seed);
  for (std::size_t trial = 0; trial < std::max<std::size_t>(1, opts.evaluation_trials); ++trial) {
    LevelOptions lo;
    lo.solver = opts.solver;
    lo.solver.evaluate_seed = seeder();
    lo.solver.value_bits = opts.value_bits;
    lo.max_cells = opts.max_cells;
    // every value is a number here; the term budget is for the symbolic run
    lo.max_terms = std::numeric_limits<std::size_t>::max();
    LevelResult lr = run_levels(fam, seeds, choose, lo);
    ++rep.trials;
    rep.surviving = lr.free_vars;
    rep.ed = lr.free_vars.size();
    long long wmin = 0;
    for (Var v : lr.free_vars) {
      long long x = dot(w, fam.vars[v].lambda);
      if (wmin == 0 || x < wmin) wmin = x;
    }
    for (const auto& d : lr.batch_degrees)
      if (wmin > 0) rep.degree_bound = std::max(rep.degree_bound, dot(w, d) / wmin);
    for (const auto& g : lr.residual) {
      GSTRATA_ASSERT(g.poly.is_constant(), "evaluation left a variable in a residual");
      if (!g.poly.is_zero()) rep.vanishes = false;
    }
    if (!rep.vanishes) break;
  }
  if (!rep.vanishes) {
    rep.error_bound = 0;
    return rep;
  }
  const double p = static_cast<double>(rep.degree_bound) / std::ldexp(1.0, static_cast<int>(rep.value_bits));
  rep.error_bound = std::pow(std::min(1.0, p), static_cast<double>(rep.trials));
  return rep;
}

EvaluationReport evaluate_ideal(const std::vector<CPoly>& h, const EmbeddingSplit& split, const StratumVars& vars,
                                const EmbeddingOptions& opts) {
  const auto& table = *vars.lambda_table();
  std::map<std::vector<long long>, std::vector<StratumGenerator>> batches;
  for (const auto& p : h) {
    if (p.is_zero()) continue;
    auto d = vars.lambda_degree(p);
    if (!d) throw PreconditionError("h is not lambda-homogeneous: " + p.to_string(vars.namer()));
    batches[table.xorder.key(*d)].push_back({p, *d, 0, {}});
  }
  const auto w = positive_functional(vars);
  EvaluationReport rep;
  rep.value_bits = opts.value_bits;
  rep.vanishes = true;
  rep.surviving = split.surviving;
  rep.ed = split.ed();
  long long wmin = 0;
  for (Var v : split.surviving) {
    long long x = dot(w, vars[v].lambda);
    if (wmin == 0 || x < wmin) wmin = x;
  }
  std::mt19937_64 seeder(opts.evaluation_seed);
  for (std::size_t trial = 0; trial < std::max<std::size_t>(1, opts.evaluation_trials); ++trial) {
    SolverOptions so = opts.solver;
    so.allowed = std::set<Var>(split.eliminable.begin(), split.eliminable.end());
    so.evaluate_seed = seeder();
    so.value_bits = opts.value_bits;
    GradedSolver solver(vars, so);
    for (const auto& [key, batch] : batches) {
      solver.freeze_through(key, false);
      std::vector<StratumGenerator> b = batch;
      for (auto& g : b) g.poly = solver.apply(g.poly);
      solver.solve(std::move(b));
      solver.freeze_through(key);
      if (wmin > 0) rep.degree_bound = std::max(rep.degree_bound, dot(w, batch.front().lambda) / wmin);
    }
    ++rep.trials;
    for (Var v : split.eliminable)
      if (!solver.is_solved(v) || solver.point().count(v))
        throw InternalError("eliminable variable " + vars.name(v) + " was not solved in its degree");
    for (const auto& g : solver.residual()) {
      GSTRATA_ASSERT(g.poly.is_constant(), "evaluation left a variable in a residual");
      if (!g.poly.is_zero()) rep.vanishes = false;
    }
    if (!rep.vanishes) break;
  }
  if (!rep.vanishes) {
    rep.error_bound = 0;
    return rep;
  }
  const double p = static_cast<double>(rep.degree_bound) / std::ldexp(1.0, static_cast<int>(rep.value_bits));
  rep.error_bound = std::pow(std::min(1.0, p), static_cast<double>(rep.trials));
  return rep;
}

std::optional<std::vector<Rational>> sample_stratum_point(const GenericFamily& fam, std::uint64_t seed,
                                                          unsigned value_bits, const EmbeddingOptions& opts) {
  GSTRATA_ASSERT(value_bits >= 2 && value_bits <= 62, "value_bits out of range");
  LevelOptions lo;
  lo.solver = opts.solver;
  lo.solver.evaluate_seed = seed;
  lo.solver.value_bits = value_bits;
  lo.max_cells = opts.max_cells;
  lo.max_terms = std::numeric_limits<std::size_t>::max();
  LevelResult lr = run_levels(fam, spair_seeds(fam, embedding_pairs(fam, opts)), reducer_choice(fam, opts.strategy), lo);
  for (const auto& g : lr.residual)
    if (!g.poly.is_zero()) return std::nullopt;
  std::vector<Rational> point(fam.vars.size());
  std::vector<char> set(fam.vars.size(), 0);
  for (const auto& [v, x] : lr.point) point[v] = x, set[v] = 1;
  for (const auto& [v, img] : lr.solutions) {
    GSTRATA_ASSERT(img.is_constant(), "unfrozen variable in a solved image");
    point[v] = img.constant_term();
    set[v] = 1;
  }
  // variables above the last level never meet an equation
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const std::int64_t half = std::int64_t{1} << (value_bits - 1);
  for (Var v = 0; v < point.size(); ++v)
    if (!set[v]) point[v] = Rational(static_cast<long>(static_cast<std::int64_t>(rng() % (2 * half)) - half));
  return point;
}

MinimalEmbedding embed_or_evaluate(const GenericFamily& fam, const EmbeddingOptions& opts) {
  try {
    return embed_stratum(fam, opts);
  } catch (const BudgetExceeded&) {
  }
  EvaluationReport rep = evaluate_embedding(fam, opts);
  MinimalEmbedding me;
  me.surviving = rep.surviving;
  me.ed = rep.ed;
  me.ideal_known = false;
  me.certificate = "evaluation";
  me.is_affine_space = rep.vanishes;
  me.dimension = rep.vanishes ? static_cast<int>(rep.ed) : -1;
  me.error_bound = rep.error_bound;
  return me;
}

CPoly rename_vars(const CPoly& p, const std::map<Var, Var>& map) {
  std::vector<CTerm> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    std::vector<CMonomial::Factor> f;
    for (const auto& [v, e] : t.mono.factors()) {
      auto it = map.find(v);
      if (it == map.end()) throw PreconditionError("variable " + std::to_string(v) + " has no image");
      f.emplace_back(it->second, e);
    }
    std::sort(f.begin(), f.end());
    terms.push_back({CMonomial(std::move(f)), t.coef});
  }
  return CPoly::from_terms(std::move(terms));
}

namespace {

// One step of the chain j0_{>=d} -> j0_{>=d+1}: the degree-d generators are
// replaced by their multiples one at a time, and before each replacement the
// two lifting conditions are checked on the homogeneous tails.
void check_lifting_step(const MonomialIdeal& cur, int d, const TermOrder& ord) {
  const std::size_t n = cur.nvars();
  std::vector<Monomial> gens = cur.sorted_generators(ord);
  std::vector<Monomial> todo;
  for (const auto& g : gens)
    if (g.degree() == d) todo.push_back(g);
  auto complement = [&](const MonomialIdeal& I) { return I.complement(d + 1); };
  for (const Monomial& alpha : todo) {
    std::vector<Monomial> next;
    for (const auto& g : gens)
      if (g != alpha) next.push_back(g);
    for (std::size_t i = 0; i < n; ++i) next.push_back(alpha * Monomial::variable(n, i));
    MonomialIdeal J(n, next);
    const auto outside = complement(J);
    const Monomial x0 = Monomial::variable(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const Monomial top = alpha * Monomial::variable(n, i);
      for (const auto& g : outside) {
        if (!ord.less(g, top)) continue;
        if (i > 0 && J.contains(g * x0))
          throw PreconditionError("lifting condition (X0 times tail) fails at degree " + std::to_string(d) +
                                  " for " + top.to_string() + ", tail " + g.to_string() + "; chain aborted");
        if (i == 0 && n > 1 && g[0] == 0 && J.contains(g * Monomial::variable(n, 1)))
          throw PreconditionError("lifting condition (X1 times tail) fails at degree " + std::to_string(d) +
                                  " for " + top.to_string() + ", tail " + g.to_string() + "; chain aborted");
      }
    }
    gens = J.sorted_generators(ord);
  }
}

}  // namespace

TruncationReport truncation_isomorphism_check(const MonomialIdeal& j0, int s, int m, const TermOrder& ord,
                                              const EmbeddingOptions& opts) {
  if (m < s) throw PreconditionError("truncation check needs m >= s");
  if (!j0.is_saturated()) throw PreconditionError("truncation check needs a saturated ideal");
  if (!is_borel_fixed(j0)) throw PreconditionError("truncation check needs a Borel-fixed ideal");
  const std::size_t n = j0.nvars();
  if (n >= 2)
    for (const auto& g : j0.generators())
      if (g.degree() > s && g[1] > 0)
        throw PreconditionError("generator " + g.to_string() + " of degree > " + std::to_string(s) +
                                " involves X1");

  TruncationReport rep;
  const MonomialIdeal js = j0.truncate(s), jm = j0.truncate(m);
  for (int d = s; d < m; ++d) check_lifting_step(j0.truncate(d), d, ord);

  auto fs = generic_generators(js, ord, tails(js, ord, TailMode::Homogeneous));
  auto fm = generic_generators(jm, ord, tails(jm, ord, TailMode::Homogeneous));
  rep.vars_s = fs.vars.size();
  rep.vars_m = fm.vars.size();

  // C_{g,b} -> C_{g X0^k, b X0^k}
  std::map<Var, Var> iota;
  const auto& lm = fm.tails.leading;
  for (Var v = 0; v < fs.vars.size(); ++v) {
    const ParamVar& pv = fs.vars[v];
    const Monomial& g = fs.tails.leading[pv.generator - 1];
    const int k = std::max(0, m - g.degree());
    const Monomial shift = Monomial::variable(n, 0, k);
    auto it = std::find(lm.begin(), lm.end(), g * shift);
    std::optional<Var> w;
    if (it != lm.end()) w = fm.vars.lookup(static_cast<std::size_t>(it - lm.begin()) + 1, pv.tail * shift);
    if (!w) {
      rep.reason = "variable " + fs.vars.name(v) + " has no counterpart";
      return rep;
    }
    iota[v] = *w;
  }

  MinimalEmbedding es = embed_stratum(fs, opts);
  EmbeddingOptions om = opts;
  for (Var v : es.surviving) om.solver.forced_free.insert(iota.at(v));
  MinimalEmbedding em = embed_stratum(fm, om);
  rep.ed_s = es.ed;
  rep.ed_m = em.ed;
  if (es.ed != em.ed) {
    rep.reason = "embedding dimensions differ";
    return rep;
  }
  std::set<Var> image;
  for (Var v : es.surviving) image.insert(iota.at(v));
  if (image != std::set<Var>(em.surviving.begin(), em.surviving.end())) {
    rep.reason = "surviving variables do not correspond";
    return rep;
  }
  std::vector<CPoly> mapped;
  for (const auto& p : es.ideal_polys()) mapped.push_back(rename_vars(p, iota));
  const COrder ord_m = fm.vars.order();
  const auto im = em.ideal_polys();
  if (!ideal_equal(mapped, im, ord_m, opts.gb)) {
    rep.reason = "embedding ideals differ";
    return rep;
  }
  const auto gb = groebner_basis(im, ord_m, opts.gb);
  for (const auto& [v, expr] : es.eliminated) {
    const CPoly lhs = normal_form(rename_vars(expr, iota), gb, ord_m);
    const CPoly& rhs_raw = em.eliminated.count(iota.at(v)) ? em.eliminated.at(iota.at(v)) : CPoly::variable(iota.at(v));
    if (lhs != normal_form(rhs_raw, gb, ord_m)) {
      rep.reason = "eliminated variable " + fs.vars.name(v) + " has a different expression";
      return rep;
    }
  }
  rep.isomorphic = true;
  return rep;
}

}  // namespace gstrata
