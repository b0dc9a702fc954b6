#include "gstrata/groebner.hpp"

#include <algorithm>
#include <unordered_map>

#include "gstrata/errors.hpp"

namespace gstrata {

namespace {

// Dense representation over a local variable set. Every order is realised as
// an integer matrix, so comparisons are lexicographic on cached weight keys.

struct DMono {
  std::vector<int> e;
  std::vector<long long> key;
  std::uint64_t mask = 0;
  int deg = 0;
};

struct DTerm {
  DMono m;
  Rational c;
};

using DPoly = std::vector<DTerm>;  // descending, nonzero coefficients

int key_cmp(const DMono& a, const DMono& b) {
  for (std::size_t i = 0; i < a.key.size(); ++i)
    if (a.key[i] != b.key[i]) return a.key[i] < b.key[i] ? -1 : 1;
  return 0;
}

bool divides(const DMono& a, const DMono& b) {
  if ((a.mask & ~b.mask) != 0 || a.deg > b.deg) return false;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

class Ring {
 public:
  Ring(const std::vector<Var>& vars, const COrder& ord) : vars_(vars) {
    for (std::size_t i = 0; i < vars_.size(); ++i) index_[vars_[i]] = i;
    rows_ = ord.matrix(vars_, std::vector<bool>(vars_.size(), true));
  }

  std::size_t nvars() const { return vars_.size(); }

  DMono make(std::vector<int> e) const {
    DMono m;
    m.key.assign(rows_.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      m.deg += e[i];
      m.mask |= std::uint64_t{1} << (i % 64);
      for (std::size_t r = 0; r < rows_.size(); ++r) m.key[r] += rows_[r][i] * e[i];
    }
    m.e = std::move(e);
    return m;
  }

  DMono mul(const DMono& a, const DMono& b) const {
    DMono m;
    m.e.resize(a.e.size());
    for (std::size_t i = 0; i < a.e.size(); ++i) m.e[i] = a.e[i] + b.e[i];
    m.key.resize(a.key.size());
    for (std::size_t i = 0; i < a.key.size(); ++i) m.key[i] = a.key[i] + b.key[i];
    m.mask = a.mask | b.mask;
    m.deg = a.deg + b.deg;
    return m;
  }

  DMono div(const DMono& a, const DMono& b) const {
    std::vector<int> e(a.e.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.e[i] - b.e[i];
    return make(std::move(e));
  }

  DMono lcm(const DMono& a, const DMono& b) const {
    std::vector<int> e(a.e.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a.e[i], b.e[i]);
    return make(std::move(e));
  }

  DPoly from(const CPoly& p) const {
    DPoly out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
      std::vector<int> e(vars_.size(), 0);
      for (const auto& [v, x] : t.mono.factors()) e[index_.at(v)] = static_cast<int>(x);
      out.push_back({make(std::move(e)), t.coef});
    }
    std::sort(out.begin(), out.end(), [](const DTerm& a, const DTerm& b) { return key_cmp(a.m, b.m) > 0; });
    return out;
  }

  CPoly to(const DPoly& p) const {
    std::vector<CTerm> ts;
    ts.reserve(p.size());
    for (const auto& t : p) {
      std::vector<CMonomial::Factor> f;
      for (std::size_t i = 0; i < t.m.e.size(); ++i)
        if (t.m.e[i] > 0) f.emplace_back(vars_[i], static_cast<std::uint32_t>(t.m.e[i]));
      ts.push_back({CMonomial(std::move(f)), t.c});
    }
    return CPoly::from_terms(std::move(ts));
  }

  // p[start..] - c * m * g[skip..]
  DPoly sub_mul(const DPoly& p, std::size_t start, const Rational& c, const DMono& m, const DPoly& g,
                std::size_t skip) const {
    DPoly out;
    out.reserve(p.size() - start + g.size());
    std::size_t i = start, j = skip;
    while (i < p.size() || j < g.size()) {
      if (j == g.size()) {
        out.push_back(p[i++]);
        continue;
      }
      DMono gm = mul(g[j].m, m);
      int cmp = i == p.size() ? -1 : key_cmp(p[i].m, gm);
      if (cmp > 0) {
        out.push_back(p[i++]);
      } else if (cmp < 0) {
        out.push_back({std::move(gm), -c * g[j].c});
        ++j;
      } else {
        Rational s = p[i].c - c * g[j].c;
        if (s != 0) out.push_back({std::move(gm), std::move(s)});
        ++i, ++j;
      }
    }
    return out;
  }

 private:
  std::vector<Var> vars_;
  std::unordered_map<Var, std::size_t> index_;
  std::vector<std::vector<long long>> rows_;
};

void make_monic(DPoly& p) {
  if (p.empty() || p[0].c == 1) return;
  Rational inv = 1 / p[0].c;
  for (auto& t : p) t.c *= inv;
}

// Full reduction of p by the polynomials in `red` (monic).
DPoly reduce(const Ring& R, DPoly p, const std::vector<const DPoly*>& red) {
  DPoly done;
  std::size_t start = 0;
  while (start < p.size()) {
    const DTerm& lt = p[start];
    const DPoly* hit = nullptr;
    for (const DPoly* g : red)
      if (divides((*g)[0].m, lt.m)) {
        hit = g;
        break;
      }
    if (!hit) {
      done.push_back(lt);
      ++start;
      continue;
    }
    DMono q = R.div(lt.m, (*hit)[0].m);
    Rational c = lt.c;
    p = R.sub_mul(p, start + 1, c, q, *hit, 1);
    start = 0;
  }
  return done;
}

struct Pair {
  std::size_t i, j;
  DMono lcm;
};

class Buchberger {
 public:
  Buchberger(const Ring& R, const GBOptions& opts) : R_(R), opts_(opts) {}

  std::vector<DPoly> run(std::vector<DPoly> input) {
    std::sort(input.begin(), input.end(), [](const DPoly& a, const DPoly& b) {
      return key_cmp(a[0].m, b[0].m) < 0;
    });
    for (auto& f : input) {
      DPoly h = reduce(R_, std::move(f), active());
      if (h.empty()) continue;
      make_monic(h);
      if (h[0].m.deg == 0) return {h};
      update(std::move(h));
    }
    std::size_t steps = 0;
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [](const Pair& a, const Pair& b) {
        int c = key_cmp(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        return std::tie(a.j, a.i) < std::tie(b.j, b.i);
      });
      Pair p = std::move(*best);
      pairs_.erase(best);
      if (++steps > opts_.max_steps)
        throw BudgetExceeded("Groebner basis exceeded " + std::to_string(opts_.max_steps) +
                             " S-pair reductions");
      const DPoly& f = polys_[p.i];
      const DPoly& g = polys_[p.j];
      DPoly s = R_.sub_mul(DPoly{}, 0, Rational(-1), R_.div(p.lcm, f[0].m), f, 1);
      s = R_.sub_mul(s, 0, Rational(1), R_.div(p.lcm, g[0].m), g, 1);
      DPoly h = reduce(R_, std::move(s), active());
      if (h.empty()) continue;
      make_monic(h);
      if (h[0].m.deg == 0) return {h};
      update(std::move(h));
    }
    return interreduce();
  }

 private:
  std::vector<const DPoly*> active() const {
    std::vector<const DPoly*> out;
    for (std::size_t k = 0; k < polys_.size(); ++k)
      if (live_[k]) out.push_back(&polys_[k]);
    return out;
  }

  static bool coprime(const DMono& a, const DMono& b) {
    if ((a.mask & b.mask) == 0) return true;
    for (std::size_t i = 0; i < a.e.size(); ++i)
      if (a.e[i] > 0 && b.e[i] > 0) return false;
    return true;
  }

  static bool same(const DMono& a, const DMono& b) { return a.e == b.e; }

  // Gebauer-Moeller installation of a new basis element.
  void update(DPoly h) {
    const std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    live_.push_back(true);
    const DMono& lh = polys_[hi][0].m;

    struct Cand {
      std::size_t g;
      DMono lcm;
      bool coprime;
    };
    std::vector<Cand> C;
    for (std::size_t g = 0; g < hi; ++g)
      if (live_[g]) C.push_back({g, R_.lcm(lh, polys_[g][0].m), coprime(lh, polys_[g][0].m)});

    std::vector<Cand> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      bool keep = C[a].coprime;
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (divides(C[b].lcm, C[a].lcm)) keep = false;
        for (const auto& d : D)
          if (keep && divides(d.lcm, C[a].lcm)) keep = false;
      }
      if (keep) D.push_back(C[a]);
    }

    std::vector<Pair> next;
    for (auto& p : pairs_) {
      const bool drop = divides(lh, p.lcm) &&
                        !same(R_.lcm(polys_[p.i][0].m, lh), p.lcm) &&
                        !same(R_.lcm(polys_[p.j][0].m, lh), p.lcm);
      if (!drop) next.push_back(std::move(p));
    }
    for (auto& d : D)
      if (!d.coprime) next.push_back({d.g, hi, std::move(d.lcm)});
    pairs_ = std::move(next);

    for (std::size_t g = 0; g < hi; ++g)
      if (live_[g] && divides(lh, polys_[g][0].m)) live_[g] = false;
  }

  std::vector<DPoly> interreduce() {
    std::vector<DPoly> min;
    for (std::size_t k = 0; k < polys_.size(); ++k)
      if (live_[k]) min.push_back(polys_[k]);
    std::sort(min.begin(), min.end(), [](const DPoly& a, const DPoly& b) {
      return key_cmp(a[0].m, b[0].m) < 0;
    });
    std::vector<DPoly> out;
    for (std::size_t k = 0; k < min.size(); ++k) {
      std::vector<const DPoly*> others;
      for (std::size_t l = 0; l < min.size(); ++l)
        if (l != k) others.push_back(&min[l]);
      DPoly tail(min[k].begin() + 1, min[k].end());
      DPoly r = reduce(R_, std::move(tail), others);
      r.insert(r.begin(), min[k][0]);
      out.push_back(std::move(r));
    }
    return out;
  }

  const Ring& R_;
  GBOptions opts_;
  std::vector<DPoly> polys_;
  std::vector<bool> live_;
  std::vector<Pair> pairs_;
};

std::vector<Var> collect_vars(const std::vector<CPoly>& gens) {
  std::set<Var> s;
  for (const auto& g : gens)
    for (Var v : g.variables()) s.insert(v);
  return {s.begin(), s.end()};
}

}  // namespace

std::vector<CPoly> groebner_basis(const std::vector<CPoly>& gens, const COrder& ord,
                                  const GBOptions& opts) {
  std::vector<CPoly> nz;
  for (const auto& g : gens)
    if (!g.is_zero()) {
      if (g.is_constant()) return {CPoly(1)};
      nz.push_back(g);
    }
  if (nz.empty()) return {};
  Ring R(collect_vars(nz), ord);
  std::vector<DPoly> input;
  for (const auto& g : nz) input.push_back(R.from(g));
  Buchberger bb(R, opts);
  std::vector<CPoly> out;
  for (const auto& p : bb.run(std::move(input))) out.push_back(R.to(p));
  return out;
}

CPoly normal_form(const CPoly& f, const std::vector<CPoly>& basis, const COrder& ord) {
  if (f.is_zero()) return f;
  std::vector<CPoly> all = basis;
  all.push_back(f);
  Ring R(collect_vars(all), ord);
  std::vector<DPoly> red;
  for (const auto& b : basis) {
    if (b.is_zero()) continue;
    red.push_back(R.from(b));
    make_monic(red.back());
  }
  std::vector<const DPoly*> ptrs;
  for (const auto& r : red) ptrs.push_back(&r);
  return R.to(reduce(R, R.from(f), ptrs));
}

bool ideal_equal(const std::vector<CPoly>& a, const std::vector<CPoly>& b, const COrder& ord,
                 const GBOptions& opts) {
  return groebner_basis(a, ord, opts) == groebner_basis(b, ord, opts);
}

bool in_ideal(const CPoly& f, const std::vector<CPoly>& gb, const COrder& ord) {
  return normal_form(f, gb, ord).is_zero();
}

std::vector<CPoly> eliminate(const std::vector<CPoly>& gens, const std::set<Var>& drop,
                             const COrder& base, const GBOptions& opts) {
  bool touches = false;
  for (const auto& g : gens)
    for (Var v : g.variables())
      if (drop.count(v)) touches = true;
  if (!touches) return groebner_basis(gens, base, opts);
  auto gb = groebner_basis(gens, COrder::elimination(drop, base), opts);
  std::vector<CPoly> out;
  for (auto& g : gb) {
    bool clean = true;
    for (Var v : g.variables())
      if (drop.count(v)) clean = false;
    if (clean) out.push_back(std::move(g));
  }
  return out;
}

std::vector<CPoly> ideal_quotient(const std::vector<CPoly>& gens, const CPoly& f, const COrder& ord,
                                  const GBOptions& opts) {
  if (f.is_zero()) throw PreconditionError("ideal quotient by the zero polynomial");
  if (f.is_constant()) return groebner_basis(gens, ord, opts);
  std::vector<CPoly> all = gens;
  all.push_back(f);
  auto vars = collect_vars(all);
  const Var t = vars.empty() ? 0 : vars.back() + 1;
  const CPoly T = CPoly::variable(t);
  std::vector<CPoly> J;
  for (const auto& g : gens) J.push_back(T * g);
  J.push_back((CPoly(1) - T) * f);
  auto inter = eliminate(J, {t}, ord, opts);
  std::vector<CPoly> quot;
  for (const auto& g : inter) {
    bool ok = false;
    CPoly q = g.divide_exact(f, ok);
    GSTRATA_ASSERT(ok, "intersection generator not divisible by the quotient polynomial");
    quot.push_back(std::move(q));
  }
  return groebner_basis(quot, ord, opts);
}

std::size_t min_hitting_set(std::vector<std::set<Var>> supports) {
  // Keep inclusion-minimal supports only.
  std::sort(supports.begin(), supports.end(),
            [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<std::set<Var>> mins;
  for (auto& s : supports) {
    bool redundant = false;
    for (const auto& m : mins)
      if (std::includes(s.begin(), s.end(), m.begin(), m.end())) {
        redundant = true;
        break;
      }
    if (!redundant) mins.push_back(std::move(s));
  }
  std::size_t best = 0;
  std::set<Var> all;
  for (const auto& m : mins) all.insert(m.begin(), m.end());
  best = all.size();
  std::set<Var> chosen;
  std::function<void()> search = [&]() {
    if (chosen.size() >= best) return;
    const std::set<Var>* open = nullptr;
    for (const auto& m : mins) {
      bool hit = false;
      for (Var v : m)
        if (chosen.count(v)) {
          hit = true;
          break;
        }
      if (!hit && (!open || m.size() < open->size())) open = &m;
    }
    if (!open) {
      best = chosen.size();
      return;
    }
    if (chosen.size() + 1 >= best) return;
    for (Var v : *open) {
      chosen.insert(v);
      search();
      chosen.erase(v);
    }
  };
  search();
  return best;
}

int krull_dimension(const std::vector<CPoly>& gens, const std::set<Var>& ambient, const COrder& ord,
                    const GBOptions& opts) {
  auto gb = groebner_basis(gens, ord, opts);
  if (gb.size() == 1 && gb[0].is_constant()) return -1;
  std::vector<std::set<Var>> supports;
  for (const auto& g : gb) {
    std::set<Var> s;
    for (const auto& [v, e] : leading_term(g, ord).mono.factors()) {
      if (!ambient.count(v)) throw PreconditionError("ideal uses a variable outside the ambient space");
      s.insert(v);
    }
    supports.push_back(std::move(s));
  }
  return static_cast<int>(ambient.size() - min_hitting_set(std::move(supports)));
}

CIdeal::CIdeal(std::vector<CPoly> gens) {
  for (auto& g : gens)
    if (!g.is_zero()) gens_.push_back(std::move(g));
}

bool CIdeal::is_zero() const { return gens_.empty(); }

std::set<Var> CIdeal::variables() const {
  std::set<Var> s;
  for (const auto& g : gens_)
    for (Var v : g.variables()) s.insert(v);
  return s;
}

const std::vector<CPoly>& CIdeal::basis(const COrder& ord, const GBOptions& opts) const {
  if (!basis_ || !(*basis_order_ == ord)) {
    basis_ = groebner_basis(gens_, ord, opts);
    basis_order_ = ord;
  }
  return *basis_;
}

}  // namespace gstrata
