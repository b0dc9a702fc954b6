#include "gstrata/levels.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <random>

#include "gstrata/errors.hpp"

namespace gstrata {

// ------------------------------------------------------------ GradedSolver

GradedSolver::GradedSolver(const StratumVars& vars, SolverOptions opts)
    : vars_(&vars), opts_(std::move(opts)), solved_(vars.size(), 0), rank_(vars.size()) {
  image_.reserve(vars.size());
  for (Var v = 0; v < vars.size(); ++v) image_.push_back(CPoly::variable(v));
  std::iota(rank_.begin(), rank_.end(), std::size_t{0});
  if (opts_.tie_seed) {
    std::mt19937_64 rng(*opts_.tie_seed);
    std::shuffle(rank_.begin(), rank_.end(), rng);
  }
  if (opts_.evaluate_seed) {
    GSTRATA_ASSERT(opts_.value_bits >= 2 && opts_.value_bits <= 64, "value_bits out of range");
    rng_.seed(*opts_.evaluate_seed);
    by_key_.resize(vars.size());
    std::iota(by_key_.begin(), by_key_.end(), Var{0});
    const auto& keys = vars.lambda_table()->keys;
    std::stable_sort(by_key_.begin(), by_key_.end(), [&](Var a, Var b) { return keys[a] < keys[b]; });
  }
}

void GradedSolver::freeze_through(const std::vector<long long>& key, bool inclusive) {
  GSTRATA_ASSERT(opts_.evaluate_seed.has_value(), "freeze_through outside evaluation mode");
  const auto& keys = vars_->lambda_table()->keys;
  const std::size_t begin = frozen_upto_;
  auto below = [&](const std::vector<long long>& k) { return inclusive ? k <= key : k < key; };
  while (frozen_upto_ < by_key_.size() && below(keys[by_key_[frozen_upto_]])) {
    const Var v = by_key_[frozen_upto_++];
    if (solved_[v]) continue;
    const unsigned bits = opts_.value_bits;
    const std::uint64_t raw = bits == 64 ? rng_() : rng_() & ((std::uint64_t{1} << bits) - 1);
    mpz_class z(static_cast<unsigned long>(raw));
    z -= mpz_class(1) << (bits - 1);
    Rational value(z);
    point_[v] = value;
    image_[v] = CPoly(value);
    solved_[v] = 1;
  }
  // pivots solved in this range may still mention variables frozen just now
  for (std::size_t k = begin; k < frozen_upto_; ++k) {
    const Var v = by_key_[k];
    if (!point_.count(v)) image_[v] = apply(image_[v]);
  }
}

CPoly GradedSolver::apply(const CPoly& p) const {
  return p.substitute([&](Var v) -> const CPoly* { return solved_[v] ? &image_[v] : nullptr; });
}

void GradedSolver::solve(std::vector<StratumGenerator> batch) {
  std::vector<CPoly> rows;
  std::vector<std::size_t> origin;
  for (std::size_t k = 0; k < batch.size(); ++k)
    if (!batch[k].poly.is_zero()) {
      rows.push_back(std::move(batch[k].poly));
      origin.push_back(k);
    }
  if (rows.empty()) return;

  std::set<Var> cols;
  for (const auto& r : rows)
    for (const auto& t : r.terms())
      if (t.mono.degree() == 1) {
        Var v = t.mono.factors()[0].first;
        GSTRATA_ASSERT(!solved_[v], "linear term in an already solved variable");
        if (opts_.forced_free.count(v)) continue;
        if (opts_.allowed && !opts_.allowed->count(v)) continue;
        cols.insert(v);
      }
  std::vector<Var> order(cols.begin(), cols.end());
  std::sort(order.begin(), order.end(), [&](Var a, Var b) {
    const bool pa = opts_.preferred.count(a) > 0, pb = opts_.preferred.count(b) > 0;
    if (pa != pb) return pa;
    return rank_[a] > rank_[b];
  });

  std::vector<char> used(rows.size(), 0);
  std::vector<std::pair<Var, std::size_t>> pivots;
  for (Var v : order) {
    std::size_t p = rows.size();
    for (std::size_t r = 0; r < rows.size() && p == rows.size(); ++r)
      if (!used[r] && rows[r].linear_coefficient(v) != 0) p = r;
    if (p == rows.size()) continue;
    used[p] = 1;
    rows[p] *= 1 / rows[p].linear_coefficient(v);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == p) continue;
      Rational a = rows[r].linear_coefficient(v);
      if (a != 0) rows[r].add_scaled(rows[p], -a, CMonomial());
    }
    pivots.emplace_back(v, p);
  }
  for (const auto& [v, p] : pivots) {
    image_[v] = CPoly::variable(v) - rows[p];
    solved_[v] = 1;
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (used[r] || rows[r].is_zero()) continue;
    StratumGenerator g = batch[origin[r]];
    g.poly = rows[r].normalized();
    residual_.push_back(std::move(g));
  }
}

std::map<Var, CPoly> GradedSolver::solutions() const {
  std::map<Var, CPoly> out;
  for (Var v = 0; v < solved_.size(); ++v)
    if (solved_[v] && !point_.count(v)) out.emplace(v, image_[v]);
  return out;
}

std::vector<Var> GradedSolver::free_vars() const {
  std::vector<Var> out;
  for (Var v = 0; v < solved_.size(); ++v)
    if (!solved_[v] || point_.count(v)) out.push_back(v);
  return out;
}

// -------------------------------------------------------------- run_levels

ReducerChoice reducer_choice(const GenericFamily& fam, const ReductionStrategy& s) {
  const auto* lead = &fam.tails.leading;
  return [lead, s](const Monomial& m) -> std::size_t {
    std::vector<std::size_t> cand;
    for (std::size_t l = 0; l < lead->size(); ++l)
      if ((*lead)[l].divides(m)) cand.push_back(l);
    GSTRATA_ASSERT(!cand.empty(), "no reducer for " + m.to_string());
    switch (s.kind) {
      case ReductionStrategy::Kind::FirstIndex: return cand.front();
      case ReductionStrategy::Kind::LastIndex: return cand.back();
      case ReductionStrategy::Kind::Random: {
        std::seed_seq seq{static_cast<std::uint64_t>(MonomialHash{}(m)), s.seed};
        std::mt19937_64 rng(seq);
        return cand[rng() % cand.size()];
      }
    }
    return cand.front();
  };
}

std::vector<Seed> spair_seeds(const GenericFamily& fam, const std::vector<SPair>& pairs) {
  std::vector<Seed> out;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    ParamPoly s = s_polynomial(fam, pairs[p]);
    Seed seed{pairs[p].lcm, {}, p};
    for (const auto& [m, c] : s.terms()) seed.terms.emplace_back(m, c);
    out.push_back(std::move(seed));
  }
  return out;
}

namespace {

struct Cell {
  CPoly initial;
  std::vector<std::pair<std::shared_ptr<const CPoly>, Var>> pending;
};

struct Level {
  std::vector<int> degree;
  std::map<std::pair<std::size_t, Monomial>, Cell> cells;
};

}  // namespace

LevelResult run_levels(const GenericFamily& fam, const std::vector<Seed>& seeds, const ReducerChoice& choose,
                       const LevelOptions& opts) {
  const TermOrder& xo = *fam.order;
  const std::size_t n = fam.ideal.nvars();
  const std::vector<long long> zero_key(xo.key(std::vector<int>(n, 0)));
  std::map<std::vector<long long>, Level> levels;

  auto level_of = [&](const std::vector<int>& d) -> Level& {
    auto key = xo.key(d);
    GSTRATA_ASSERT(key > zero_key, "non-positive lambda-degree");
    auto [it, ins] = levels.try_emplace(std::move(key));
    if (ins) it->second.degree = d;
    return it->second;
  };

  for (std::size_t s = 0; s < seeds.size(); ++s)
    for (const auto& [m, c] : seeds[s].terms) {
      std::vector<int> d(n);
      for (std::size_t v = 0; v < n; ++v) d[v] = seeds[s].top[v] - m[v];
      level_of(d).cells[{s, m}].initial += c;
    }

  LevelResult res;
  std::optional<GradedSolver> solver;
  if (opts.substitute) solver.emplace(fam.vars, opts.solver);

  const bool evaluating = solver && opts.solver.evaluate_seed.has_value();
  auto count_terms = [&](std::size_t k) {
    res.terms += k;
    if (res.terms > opts.max_terms)
      throw BudgetExceeded("level reduction produced more than " + std::to_string(opts.max_terms) + " terms");
  };

  while (!levels.empty()) {
    auto node = levels.extract(levels.begin());
    Level& L = node.mapped();
    res.cells += L.cells.size();
    res.top_degree = L.degree;
    if (res.cells > opts.max_cells)
      throw BudgetExceeded("level reduction visited more than " + std::to_string(opts.max_cells) + " cells");
    if (evaluating) solver->freeze_through(node.key(), false);

    auto pending_sum = [&](const Cell& c) {
      CPoly v;
      for (const auto& [p, var] : c.pending) {
        if (solver && solver->is_solved(var)) {
          const CPoly& img = solver->image(var);
          count_terms(p->size() * img.size());
          v += *p * img;
        } else {
          count_terms(p->size());
          v += p->times(CMonomial::variable(var));
        }
      }
      return v;
    };

    std::vector<StratumGenerator> outside;
    std::vector<std::pair<const std::pair<std::size_t, Monomial>*, Cell*>> inside;
    for (auto& [key, cell] : L.cells) {
      if (fam.ideal.contains(key.second)) {
        inside.emplace_back(&key, &cell);
        continue;
      }
      CPoly v = cell.initial + pending_sum(cell);
      if (v.is_zero()) continue;
      outside.push_back({std::move(v), L.degree, seeds[key.first].origin, key.second});
    }
    if (solver) {
      if (!outside.empty()) res.batch_degrees.push_back(L.degree);
      solver->solve(std::move(outside));
      if (evaluating) solver->freeze_through(node.key());
    } else
      for (auto& g : outside) res.generators.push_back(std::move(g));

    for (auto& [key, cell] : inside) {
      CPoly v = (solver ? solver->apply(cell->initial) : cell->initial) + pending_sum(*cell);
      cell->pending.clear();
      if (v.is_zero()) continue;
      const Monomial& mu = key->second;
      const std::size_t l = choose(mu);
      const Monomial shift = mu / fam.tails.leading.at(l);
      auto neg = std::make_shared<const CPoly>(-v);
      for (std::size_t k = 0; k < fam.tails.tails[l].size(); ++k) {
        const Var c = fam.var_of[l][k];
        std::vector<int> d = L.degree;
        for (std::size_t x = 0; x < n; ++x) d[x] += fam.vars[c].lambda[x];
        level_of(d).cells[{key->first, fam.tails.tails[l][k] * shift}].pending.emplace_back(neg, c);
      }
    }
  }

  if (solver) {
    res.solutions = solver->solutions();
    res.free_vars = solver->free_vars();
    res.residual = solver->residual();
    res.point = solver->point();
  }
  return res;
}

}  // namespace gstrata
