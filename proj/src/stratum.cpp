#include "gstrata/stratum.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "gstrata/errors.hpp"

namespace gstrata {

std::string to_string(TailMode m) {
  switch (m) {
    case TailMode::Full: return "full";
    case TailMode::Homogeneous: return "homogeneous";
    case TailMode::Custom: return "custom";
  }
  return "?";
}

TailMode parse_tail_mode(const std::string& s) {
  if (s == "full") return TailMode::Full;
  if (s == "homogeneous") return TailMode::Homogeneous;
  if (s == "custom") return TailMode::Custom;
  throw ParseError("unknown tail mode '" + s + "' (expected full, homogeneous or custom)");
}

// ------------------------------------------------------------------ tails

namespace {

bool zero_dimensional(const MonomialIdeal& j) {
  const std::size_t n = j.nvars();
  std::vector<bool> has(n, false);
  for (const auto& g : j.generators()) {
    std::size_t support = 0, var = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (g[v] > 0) ++support, var = v;
    if (support == 1) has[var] = true;
  }
  return std::all_of(has.begin(), has.end(), [](bool b) { return b; });
}

std::vector<Monomial> below(const MonomialIdeal& j, const TermOrder& ord, const Monomial& g, int d) {
  std::vector<Monomial> out;
  for (auto& m : j.complement(d))
    if (ord.compare(m, g) < 0) out.push_back(std::move(m));
  return out;
}

}  // namespace

TailSpec tails(const MonomialIdeal& j, const TermOrder& ord, TailMode mode) {
  if (j.nvars() != ord.nvars()) throw PreconditionError("order and ideal have different variable counts");
  if (mode == TailMode::Custom) throw PreconditionError("custom tails need explicit lists (use custom_tails)");
  TailSpec t;
  t.mode = mode;
  t.leading = j.sorted_generators(ord);
  const bool graded = ord.kind() != TermOrder::Kind::Lex;
  int max_degree = 0;
  if (mode == TailMode::Full && !graded) {
    if (!zero_dimensional(j)) {
      // Under Lex a variable without a pure power in j gives X_k^e outside j
      // for every e, below any generator involving a larger variable.
      for (std::size_t k = 0; k < j.nvars(); ++k) {
        bool pure = false;
        for (const auto& g : j.generators())
          if (g.degree() == g[k]) pure = true;
        if (pure) continue;
        for (const auto& g : t.leading)
          for (std::size_t v = k + 1; v < j.nvars(); ++v)
            if (g[v] > 0)
              throw PreconditionError("tail of generator " + g.to_string() + " is infinite under " + ord.name() +
                                      " (all powers of X" + std::to_string(k) + " lie outside the ideal)");
      }
      throw PreconditionError("full tails under Lex need a zero-dimensional ideal");
    }
    for (std::size_t v = 0; v < j.nvars(); ++v) {
      int e = 0;
      for (const auto& g : j.generators())
        if (g.degree() == g[v]) e = e == 0 ? g[v] : std::min(e, g[v]);
      max_degree += e - 1;
    }
  }
  for (const auto& g : t.leading) {
    std::vector<Monomial> tail;
    if (mode == TailMode::Homogeneous) {
      tail = below(j, ord, g, g.degree());
    } else {
      const int top = graded ? g.degree() : max_degree;
      for (int d = 0; d <= top; ++d)
        for (auto& m : below(j, ord, g, d)) tail.push_back(std::move(m));
    }
    sort_descending(tail, ord);
    t.tails.push_back(std::move(tail));
  }
  return t;
}

TailSpec custom_tails(const MonomialIdeal& j, const TermOrder& ord, std::vector<std::vector<Monomial>> lists) {
  TailSpec t;
  t.mode = TailMode::Custom;
  t.leading = j.sorted_generators(ord);
  if (lists.size() != t.leading.size())
    throw PreconditionError("expected " + std::to_string(t.leading.size()) + " tail lists, got " +
                            std::to_string(lists.size()));
  for (auto& l : lists) sort_descending(l, ord);
  t.tails = std::move(lists);
  validate_tails(j, ord, t);
  return t;
}

void validate_tails(const MonomialIdeal& j, const TermOrder& ord, const TailSpec& t) {
  if (t.leading != j.sorted_generators(ord)) throw PreconditionError("tail spec does not match the ideal");
  if (t.tails.size() != t.leading.size()) throw PreconditionError("one tail list per generator required");
  for (std::size_t i = 0; i < t.leading.size(); ++i) {
    const Monomial& g = t.leading[i];
    std::set<Monomial> seen;
    for (const auto& a : t.tails[i]) {
      if (a.nvars() != j.nvars()) throw PreconditionError("tail monomial with wrong variable count");
      if (j.contains(a))
        throw PreconditionError("tail monomial " + a.to_string() + " of " + g.to_string() + " lies in the ideal");
      if (ord.compare(a, g) >= 0)
        throw PreconditionError("tail monomial " + a.to_string() + " is not below " + g.to_string());
      if (t.mode == TailMode::Homogeneous && a.degree() != g.degree())
        throw PreconditionError("homogeneous tail monomial " + a.to_string() + " has the wrong degree");
      if (!seen.insert(a).second) throw PreconditionError("repeated tail monomial " + a.to_string());
    }
  }
}

// -------------------------------------------------------------- variables

StratumVars::StratumVars(const TermOrder& ord, std::vector<ParamVar> vars) : vars_(std::move(vars)) {
  std::vector<std::vector<int>> lambdas;
  lambdas.reserve(vars_.size());
  for (const auto& v : vars_) lambdas.push_back(v.lambda);
  table_ = std::make_shared<const LambdaTable>(ord, std::move(lambdas));
}

std::string StratumVars::name(Var v) const {
  const auto& p = vars_.at(v);
  return "c" + std::to_string(p.generator) + "_" + std::to_string(p.position);
}

std::function<std::string(Var)> StratumVars::namer() const {
  return [this](Var v) { return name(v); };
}

std::optional<Var> StratumVars::lookup(std::size_t generator, const Monomial& tail) const {
  for (Var v = 0; v < vars_.size(); ++v)
    if (vars_[v].generator == generator && vars_[v].tail == tail) return v;
  return std::nullopt;
}

std::optional<Var> StratumVars::by_name(const std::string& n) const {
  for (Var v = 0; v < vars_.size(); ++v)
    if (name(v) == n) return v;
  return std::nullopt;
}

COrder StratumVars::order() const { return COrder::lambda(table_); }

std::optional<std::vector<int>> StratumVars::lambda_degree(const CPoly& p) const {
  if (p.is_zero()) return std::nullopt;
  std::optional<std::vector<int>> d;
  for (const auto& t : p.terms()) {
    auto e = table_->degree_of(t.mono);
    if (!d) d = std::move(e);
    else if (*d != e) return std::nullopt;
  }
  return d;
}

GenericFamily generic_generators(const MonomialIdeal& j, const TermOrder& ord, const TailSpec& t) {
  validate_tails(j, ord, t);
  GenericFamily fam;
  fam.ideal = j;
  fam.order = std::make_shared<const TermOrder>(ord);
  fam.tails = t;

  struct Slot {
    std::vector<long long> key;
    std::size_t i, k;
  };
  std::vector<Slot> slots;
  const std::size_t n = j.nvars();
  std::vector<ParamVar> raw;
  for (std::size_t i = 0; i < t.leading.size(); ++i)
    for (std::size_t k = 0; k < t.tails[i].size(); ++k) {
      std::vector<int> lam(n);
      for (std::size_t v = 0; v < n; ++v) lam[v] = t.leading[i][v] - t.tails[i][k][v];
      slots.push_back({ord.key(lam), i, k});
      raw.push_back({i + 1, k + 1, t.tails[i][k], std::move(lam)});
    }
  std::vector<std::size_t> perm(slots.size());
  for (std::size_t a = 0; a < perm.size(); ++a) perm[a] = a;
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (slots[a].key != slots[b].key) return slots[a].key < slots[b].key;
    if (slots[a].i != slots[b].i) return slots[a].i < slots[b].i;
    return slots[a].k < slots[b].k;
  });
  std::vector<ParamVar> vars;
  fam.var_of.resize(t.leading.size());
  for (std::size_t i = 0; i < t.leading.size(); ++i) fam.var_of[i].resize(t.tails[i].size());
  for (std::size_t a = 0; a < perm.size(); ++a) {
    const auto& s = slots[perm[a]];
    GSTRATA_ASSERT(ord.key(raw[perm[a]].lambda) > std::vector<long long>(s.key.size(), 0),
                   "lambda-degree must be positive");
    fam.var_of[s.i][s.k] = static_cast<Var>(a);
    vars.push_back(raw[perm[a]]);
  }
  fam.vars = StratumVars(ord, std::move(vars));

  for (std::size_t i = 0; i < t.leading.size(); ++i) {
    ParamPoly f(fam.order);
    f.add(t.leading[i], CPoly(1));
    for (std::size_t k = 0; k < t.tails[i].size(); ++k) f.add(t.tails[i][k], CPoly::variable(fam.var_of[i][k]));
    fam.F.push_back(std::move(f));
  }
  return fam;
}

// ----------------------------------------------------------------- S-pairs

std::vector<SPair> spair_generators(const std::vector<Monomial>& g, const PairOptions& opts) {
  std::vector<SPair> all;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t k = i + 1; k < g.size(); ++k) {
      auto lc = lcm_and_cofactors(g[i], g[k]);
      all.push_back({i, k, lc.lcm, lc.left, lc.right});
    }
  if (opts.only_next_degree) {
    int r = 0;
    for (const auto& m : g) r = std::max(r, m.degree());
    for (const auto& m : g)
      if (m.degree() != r) throw PreconditionError("degree r+1 pair selection needs an ideal generated in one degree");
    std::erase_if(all, [&](const SPair& p) { return p.lcm.degree() != r + 1; });
    return all;
  }
  if (!opts.prune) return all;

  auto lcm_of = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return lcm_and_cofactors(g[a], g[b]).lcm;
  };
  std::vector<SPair> kept, dropped;
  for (auto& p : all) {
    bool redundant = coprime(g[p.i], g[p.k]);
    for (std::size_t l = 0; l < g.size() && !redundant; ++l) {
      if (l == p.i || l == p.k || !g[l].divides(p.lcm)) continue;
      // The syzygy is a combination of the (i,l) and (l,k) ones when both
      // lcms are proper divisors; strictness keeps the argument well founded.
      if (!(lcm_of(p.i, l) == p.lcm) && !(lcm_of(l, p.k) == p.lcm)) redundant = true;
    }
    (redundant ? dropped : kept).push_back(std::move(p));
  }
  if (opts.reinsert_seed) {
    std::mt19937_64 rng(*opts.reinsert_seed);
    for (auto& p : dropped)
      if (rng() % 3 == 0) kept.push_back(std::move(p));
    std::sort(kept.begin(), kept.end(),
              [](const SPair& a, const SPair& b) { return std::pair(a.i, a.k) < std::pair(b.i, b.k); });
  }
  return kept;
}

std::vector<SPair> spair_generators(const MonomialIdeal& j, const TermOrder& ord, const PairOptions& opts) {
  return spair_generators(j.sorted_generators(ord), opts);
}

ParamPoly s_polynomial(const GenericFamily& fam, const SPair& p) {
  ParamPoly s = fam.F.at(p.i).times(p.left);
  s.sub_multiple(CPoly(1), p.right, fam.F.at(p.k));
  return s;
}

// --------------------------------------------------------------- reduction

ParamPoly reduce_complete(ParamPoly g, const std::vector<ParamPoly>& B, const ReductionStrategy& s) {
  for (const auto& b : B)
    if (b.is_zero() || !(b.leading_coefficient() == CPoly(1)))
      throw PreconditionError("reducers must have leading X-coefficient 1");
  std::mt19937_64 rng(s.seed);
  std::vector<std::size_t> cand;
  auto it = g.terms().begin();
  while (it != g.terms().end()) {
    const Monomial m = it->first;
    cand.clear();
    for (std::size_t l = 0; l < B.size(); ++l)
      if (B[l].leading_monomial().divides(m)) cand.push_back(l);
    if (cand.empty()) {
      ++it;
      continue;
    }
    std::size_t l = cand.front();
    if (s.kind == ReductionStrategy::Kind::LastIndex) l = cand.back();
    if (s.kind == ReductionStrategy::Kind::Random) l = cand[rng() % cand.size()];
    const CPoly c = it->second;
    g.sub_multiple(c, m / B[l].leading_monomial(), B[l]);
    // Everything produced lies below m.
    it = g.terms().upper_bound(m);
  }
  return g;
}

ParamPoly reduce_mod_monomials(const ParamPoly& g, const MonomialIdeal& j) {
  ParamPoly r(g.order());
  for (const auto& [m, c] : g.terms())
    if (!j.contains(m)) r.add(m, c);
  return r;
}

// ------------------------------------------------------------------ stratum

std::vector<CPoly> StratumResult::h_polys() const {
  std::vector<CPoly> out;
  for (const auto& g : h) out.push_back(g.poly);
  return out;
}

std::vector<CPoly> StratumResult::linear_polys() const {
  std::vector<CPoly> out;
  for (const auto& g : linear) out.push_back(g.poly);
  return out;
}

void canonicalize_generators(std::vector<StratumGenerator>& gens, const StratumVars& vars) {
  const TermOrder& xo = vars.lambda_table()->xorder;
  for (auto& g : gens) g.poly = g.poly.normalized();
  std::erase_if(gens, [](const StratumGenerator& g) { return g.poly.is_zero(); });
  std::stable_sort(gens.begin(), gens.end(), [&](const StratumGenerator& a, const StratumGenerator& b) {
    auto ka = xo.key(a.lambda), kb = xo.key(b.lambda);
    if (ka != kb) return ka < kb;
    return canonical_less(a.poly, b.poly);
  });
  std::vector<StratumGenerator> out;
  for (auto& g : gens)
    if (out.empty() || !(out.back().poly == g.poly)) out.push_back(std::move(g));
  gens = std::move(out);
}

StratumResult stratum_ideal(const MonomialIdeal& j, const TailSpec& t, const TermOrder& ord,
                            const StratumOptions& opts) {
  StratumResult res;
  res.family = generic_generators(j, ord, t);
  const auto& fam = res.family;
  res.pairs = spair_generators(t.leading, opts.pairs);
  const std::size_t n = j.nvars();
  for (std::size_t p = 0; p < res.pairs.size(); ++p) {
    const auto& pr = res.pairs[p];
    ParamPoly s = s_polynomial(fam, pr);
    auto collect = [&](const ParamPoly& q, std::vector<StratumGenerator>& out) {
      for (const auto& [m, c] : q.terms()) {
        auto lam = fam.vars.lambda_degree(c);
        std::vector<int> expect(n);
        for (std::size_t v = 0; v < n; ++v) expect[v] = pr.lcm[v] - m[v];
        GSTRATA_ASSERT(lam && *lam == expect, "X-coefficient is not lambda-homogeneous of the expected degree");
        out.push_back({c, *lam, p, m});
      }
    };
    collect(reduce_mod_monomials(s, j), res.linear);
    collect(reduce_complete(s, fam.F, opts.strategy), res.h);
  }
  canonicalize_generators(res.h, fam.vars);
  canonicalize_generators(res.linear, fam.vars);
  return res;
}

// -------------------------------------------------------------- point test

namespace {

using QPoly = std::map<Monomial, Rational, Descending>;

void sub_scaled(QPoly& a, const Rational& c, const Monomial& shift, const QPoly& b) {
  for (const auto& [m, v] : b) {
    Monomial key = m * shift;
    auto [it, ins] = a.try_emplace(key, 0);
    it->second -= c * v;
    if (it->second == 0) a.erase(it);
  }
}

}  // namespace

bool check_point(const GenericFamily& fam, const std::vector<Rational>& point) {
  if (point.size() != fam.vars.size())
    throw PreconditionError("point has " + std::to_string(point.size()) + " coordinates, stratum has " +
                            std::to_string(fam.vars.size()) + " variables");
  const Descending desc{fam.order.get()};
  std::vector<QPoly> B;
  for (const auto& f : fam.F) {
    QPoly q(desc);
    for (auto& [m, v] : f.specialize([&](Var x) { return point[x]; })) q.emplace(m, v);
    B.push_back(std::move(q));
  }
  for (const auto& p : spair_generators(fam.tails.leading)) {
    QPoly s(desc);
    sub_scaled(s, -1, p.left, B[p.i]);
    sub_scaled(s, 1, p.right, B[p.k]);
    auto it = s.begin();
    while (it != s.end()) {
      const Monomial m = it->first;
      std::size_t l = 0;
      while (l < B.size() && !fam.tails.leading[l].divides(m)) ++l;
      if (l == B.size()) return false;  // a nonzero term outside j survives
      const Rational c = it->second;
      sub_scaled(s, c, m / fam.tails.leading[l], B[l]);
      it = s.upper_bound(m);
    }
  }
  return true;
}

}  // namespace gstrata
