#include "gstrata/charts.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "gstrata/errors.hpp"

namespace gstrata {

std::string to_string(ChartMode m) { return m == ChartMode::Stratum ? "stratum" : "chart"; }

ChartMode parse_chart_mode(const std::string& s) {
  if (s == "stratum") return ChartMode::Stratum;
  if (s == "chart") return ChartMode::Chart;
  throw ParseError("unknown matrix mode '" + s + "' (expected stratum or chart)");
}

std::vector<Var> ChartVariables::extra() const {
  std::vector<Var> out;
  for (Var v = static_cast<Var>(stratum_vars); v < vars.size(); ++v) out.push_back(v);
  return out;
}

ChartVariables chart_variables(const MonomialIdeal& j, const TermOrder& ord, ChartMode mode) {
  if (j.is_zero()) throw PreconditionError("the zero ideal has no chart");
  const int r = j.min_generator_degree();
  if (!j.generated_in_degree(r)) throw PreconditionError("ideal is not generated in a single degree: " + j.to_string());
  ChartVariables cv;
  cv.family = generic_generators(j, ord, tails(j, ord, TailMode::Homogeneous));
  cv.stratum_vars = cv.family.vars.size();
  if (mode == ChartMode::Stratum) {
    cv.vars = cv.family.vars;
    cv.tails = cv.family.tails.tails;
    cv.var_of = cv.family.var_of;
    return cv;
  }
  const auto& lead = cv.family.tails.leading;
  std::vector<Monomial> comp = j.complement(r);
  sort_descending(comp, ord);
  std::vector<ParamVar> all = cv.family.vars.all();
  cv.tails.resize(lead.size());
  cv.var_of.resize(lead.size());
  for (std::size_t i = 0; i < lead.size(); ++i) {
    std::size_t next = cv.family.tails.tails[i].size();
    std::size_t k = 0;
    for (const auto& a : comp) {
      cv.tails[i].push_back(a);
      if (ord.compare(a, lead[i]) < 0) {
        cv.var_of[i].push_back(cv.family.var_of[i][k++]);
        continue;
      }
      std::vector<int> lam(j.nvars());
      for (std::size_t x = 0; x < lam.size(); ++x) lam[x] = lead[i][x] - a[x];
      all.push_back({i + 1, ++next, a, std::move(lam)});
      cv.var_of[i].push_back(static_cast<Var>(all.size() - 1));
    }
  }
  cv.vars = StratumVars(ord, std::move(all));
  return cv;
}

// ---------------------------------------------------------------- matrices

CoeffMatrix build_matrix(const MonomialIdeal& j, const TermOrder& ord, ChartMode mode, const MatrixOptions& opts) {
  if (j.nvars() != ord.nvars()) throw PreconditionError("order and ideal have different variable counts");
  if (j.is_zero() || j.is_unit()) throw PreconditionError("matrix needs a proper nonzero ideal");
  const int r = j.min_generator_degree();
  if (!j.generated_in_degree(r)) throw PreconditionError("ideal is not generated in a single degree: " + j.to_string());

  CoeffMatrix mx;
  mx.mode = mode;
  mx.r = r;
  const std::size_t nv = j.nvars();
  mx.t = j.size();
  mx.M = static_cast<std::size_t>(binomial(static_cast<long long>(nv) - 1 + r, static_cast<long long>(nv) - 1));
  mx.M1 = static_cast<std::size_t>(binomial(static_cast<long long>(nv) + r, static_cast<long long>(nv) - 1));
  mx.t1 = j.degree_part(r + 1).size();
  if (opts.check_gotzmann) {
    const UniPoly p = hilbert_polynomial(j).polynomial;
    const long long g = gotzmann_number(p);
    if (g != r)
      throw PreconditionError("generator degree " + std::to_string(r) + " differs from the Gotzmann number " +
                              std::to_string(g) + " of " + p.to_string());
    const GotzmannParams gp = gotzmann_params(p, nv);
    GSTRATA_ASSERT(static_cast<std::size_t>(gp.t) == mx.t && static_cast<std::size_t>(gp.t1) == mx.t1,
                   "t, t1 disagree with the Hilbert polynomial");
  }
  mx.chart = chart_variables(j, ord, mode);

  mx.columns = monomials_of_degree(nv, r + 1);
  sort_descending(mx.columns, ord);
  std::map<Monomial, std::size_t> col;
  for (std::size_t c = 0; c < mx.columns.size(); ++c) col.emplace(mx.columns[c], c);

  const auto& lead = mx.chart.family.tails.leading;
  for (std::size_t i = 0; i < lead.size(); ++i)
    for (std::size_t x = nv; x-- > 0;) {
      const Monomial xv = Monomial::variable(nv, x);
      std::vector<CPoly> row(mx.columns.size());
      row[col.at(lead[i] * xv)] += CPoly(1);
      for (std::size_t k = 0; k < mx.chart.tails[i].size(); ++k)
        row[col.at(mx.chart.tails[i][k] * xv)] += CPoly::variable(mx.chart.var_of[i][k]);
      mx.row_labels.push_back({x, i});
      mx.entries.push_back(std::move(row));
    }
  return mx;
}

namespace {

void sub_row(std::vector<CPoly>& row, const std::vector<CPoly>& piv, const std::vector<std::size_t>& support,
             const CPoly& a) {
  for (std::size_t c : support) row[c] -= a * piv[c];
}

std::vector<std::size_t> support_of(const std::vector<CPoly>& row) {
  std::vector<std::size_t> s;
  for (std::size_t c = 0; c < row.size(); ++c)
    if (!row[c].is_zero()) s.push_back(c);
  return s;
}

CMatrix submatrix(const CMatrix& w, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  CMatrix out;
  out.reserve(rows.size());
  for (std::size_t r : rows) {
    std::vector<CPoly> row;
    row.reserve(cols.size());
    for (std::size_t c : cols) row.push_back(w[r][c]);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<CPoly> distinct_normalized(const CMatrix& m) {
  std::vector<CPoly> out;
  for (const auto& row : m)
    for (const auto& e : row)
      if (!e.is_zero()) out.push_back(e.normalized());
  std::sort(out.begin(), out.end(), canonical_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<CPoly> BlockForm::h_generators() const { return distinct_normalized(R); }
std::vector<CPoly> BlockForm::linear_part() const { return distinct_normalized(L); }

BlockForm block_reduce(const CoeffMatrix& mx) {
  const MonomialIdeal& j = mx.chart.family.ideal;
  const auto& lead = mx.chart.family.tails.leading;
  BlockForm bf;
  std::map<Monomial, std::size_t> col;
  for (std::size_t c = 0; c < mx.cols(); ++c) {
    col.emplace(mx.columns[c], c);
    (j.contains(mx.columns[c]) ? bf.ideal_cols : bf.complement_cols).push_back(c);
  }

  // designated column of X_x F_i is X_x X^{gamma_i}; the first row reaching
  // a column becomes its pivot
  std::vector<std::size_t> designated(mx.rows());
  std::map<std::size_t, std::size_t> pivot_of;
  for (std::size_t r = 0; r < mx.rows(); ++r) {
    const auto& lab = mx.row_labels[r];
    designated[r] = col.at(lead[lab.generator] * Monomial::variable(j.nvars(), lab.x));
    pivot_of.emplace(designated[r], r);
  }
  if (pivot_of.size() < bf.ideal_cols.size() || bf.ideal_cols.size() != mx.t1)
    throw PreconditionError("only " + std::to_string(pivot_of.size()) + " independent pivot rows, need t1 = " +
                            std::to_string(mx.t1));
  std::vector<char> is_pivot(mx.rows(), 0);
  for (std::size_t c : bf.ideal_cols) {
    bf.pivot_rows.push_back(pivot_of.at(c));
    is_pivot[pivot_of.at(c)] = 1;
  }
  for (std::size_t r = 0; r < mx.rows(); ++r)
    if (!is_pivot[r]) bf.other_rows.push_back(r);

  CMatrix w = mx.entries;
  std::vector<std::vector<std::size_t>> support(mx.rows());
  for (std::size_t r : bf.pivot_rows) support[r] = support_of(w[r]);

  for (std::size_t r : bf.other_rows) sub_row(w[r], w[pivot_of.at(designated[r])], support[pivot_of.at(designated[r])], 1);
  bf.D = submatrix(w, bf.pivot_rows, bf.ideal_cols);
  bf.E = submatrix(w, bf.pivot_rows, bf.complement_cols);
  bf.S = submatrix(w, bf.other_rows, bf.ideal_cols);
  bf.L = submatrix(w, bf.other_rows, bf.complement_cols);

  for (std::size_t a = 0; a < bf.D.size(); ++a)
    for (std::size_t b = 0; b <= a; ++b)
      if (bf.D[a][b] != CPoly(a == b ? 1 : 0))
        throw PreconditionError("pivot block is not unitriangular (" + to_string(mx.mode) +
                                " mode); use the minors instead");

  // columns are descending, so clearing them in order never refills one
  for (std::size_t r : bf.other_rows)
    for (std::size_t c : bf.ideal_cols) {
      if (w[r][c].is_zero()) continue;
      const CPoly a = w[r][c];
      const std::size_t p = pivot_of.at(c);
      sub_row(w[r], w[p], support[p], a);
    }
  bf.R = submatrix(w, bf.other_rows, bf.complement_cols);
  for (std::size_t r : bf.other_rows)
    for (std::size_t c : bf.ideal_cols) GSTRATA_ASSERT(w[r][c].is_zero(), "S block not cleared");
  return bf;
}

// ------------------------------------------------------------------ minors

namespace {

CPoly bareiss_det(CMatrix m) {
  const std::size_t k = m.size();
  CPoly prev(1);
  bool negate = false;
  for (std::size_t i = 0; i < k; ++i) {
    if (m[i][i].is_zero()) {
      std::size_t s = i + 1;
      while (s < k && m[s][i].is_zero()) ++s;
      if (s == k) return CPoly();
      std::swap(m[i], m[s]);
      negate = !negate;
    }
    for (std::size_t r = i + 1; r < k; ++r) {
      for (std::size_t c = i + 1; c < k; ++c) {
        CPoly v = m[r][c] * m[i][i] - m[r][i] * m[i][c];
        bool ok = true;
        m[r][c] = v.divide_exact(prev, ok);
        GSTRATA_ASSERT(ok, "inexact Bareiss division");
      }
      m[r][i] = CPoly();
    }
    prev = m[i][i];
  }
  return negate ? -m[k - 1][k - 1] : m[k - 1][k - 1];
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;)
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t q = i + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
      return true;
    }
  return false;
}

}  // namespace

CIdeal minors_ideal(const CMatrix& m, std::size_t size, const MinorsOptions& opts) {
  CMatrix rows;
  for (const auto& row : m)
    if (std::any_of(row.begin(), row.end(), [](const CPoly& e) { return !e.is_zero(); })) rows.push_back(row);
  const std::size_t ncols = m.empty() ? 0 : m[0].size();
  if (size == 0) return CIdeal({CPoly(1)});
  if (size > rows.size() || size > ncols) return CIdeal();
  const long long count = binomial(static_cast<long long>(rows.size()), static_cast<long long>(size)) *
                          binomial(static_cast<long long>(ncols), static_cast<long long>(size));
  if (count < 0 || static_cast<std::size_t>(count) > opts.max_minors)
    throw BudgetExceeded(std::to_string(count) + " minors of size " + std::to_string(size) + " exceed the budget of " +
                         std::to_string(opts.max_minors));
  std::vector<CPoly> out;
  std::vector<std::size_t> ri(size), ci(size);
  for (std::size_t a = 0; a < size; ++a) ri[a] = a;
  do {
    for (std::size_t a = 0; a < size; ++a) ci[a] = a;
    do {
      CMatrix sub(size, std::vector<CPoly>(size));
      for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) sub[a][b] = rows[ri[a]][ci[b]];
      CPoly d = bareiss_det(std::move(sub));
      if (!d.is_zero()) out.push_back(d.normalized());
    } while (next_combination(ci, ncols));
  } while (next_combination(ri, rows.size()));
  std::sort(out.begin(), out.end(), canonical_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return CIdeal(std::move(out));
}

CIdeal minors_ideal(const CoeffMatrix& mx, const MinorsOptions& opts) {
  return minors_ideal(mx.entries, mx.t1 + 1, opts);
}

// ------------------------------------------------------------------ charts

std::strong_ordering plucker_compare(const MonomialIdeal& a, const MonomialIdeal& b, const TermOrder& ord) {
  if (a.nvars() != b.nvars() || a.nvars() != ord.nvars())
    throw PreconditionError("Pluecker comparison needs ideals in the same ring as the order");
  if (a.size() != b.size() || a.is_zero() || !a.generated_in_degree(a.min_generator_degree()) ||
      !b.generated_in_degree(a.min_generator_degree()))
    throw PreconditionError("Pluecker comparison needs t generators of one degree r on both sides");
  const auto ga = a.sorted_generators(ord), gb = b.sorted_generators(ord);
  for (std::size_t k = 0; k < ga.size(); ++k) {
    auto c = ord.compare(ga[k], gb[k]);
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

LocallyClosed locally_closed_embedding(const MonomialIdeal& j, const TermOrder& ord, const MatrixOptions& opts) {
  // validates r against the Hilbert polynomial
  CoeffMatrix mx = build_matrix(j, ord, ChartMode::Chart, opts);
  LocallyClosed lc;
  lc.chart = std::move(mx.chart);
  lc.stratum_ideal = stratum_ideal(j, lc.chart.family.tails, ord).h_polys();
  std::vector<CPoly> gens = lc.stratum_ideal;
  for (Var v : lc.chart.extra()) gens.push_back(CPoly::variable(v));
  lc.ideal = CIdeal(std::move(gens));
  return lc;
}

QMatrix specialize(const CMatrix& m, const std::vector<Rational>& point) {
  auto value = [&](Var v) { return point.at(v); };
  QMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) {
    std::vector<Rational> q;
    q.reserve(row.size());
    for (const auto& e : row) q.push_back(e.evaluate(value));
    out.push_back(std::move(q));
  }
  return out;
}

std::size_t rational_rank(QMatrix m) {
  std::size_t rank = 0;
  const std::size_t ncols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < ncols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < ncols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// ------------------------------------------------------------- components

MinimalEmbedding embed_ideal(const std::vector<CPoly>& gens, const std::vector<Var>& ambient, const StratumVars& vars,
                             const EmbeddingOptions& opts) {
  const std::set<Var> amb(ambient.begin(), ambient.end());
  std::vector<CPoly> lin;
  for (const auto& g : gens) {
    for (Var v : g.variables())
      if (!amb.count(v)) throw PreconditionError("generator uses " + vars.name(v) + " outside the ambient space");
    CPoly l = g.linear_part();
    if (!l.is_zero()) lin.push_back(std::move(l));
  }
  EmbeddingOptions o = opts;
  o.compute_dimension = false;
  MinimalEmbedding me = minimal_embedding(gens, eliminable_split(lin, vars.size()), vars, o);
  std::erase_if(me.surviving, [&](Var v) { return !amb.count(v); });
  finish_embedding(me, vars, opts);
  return me;
}

namespace {

// Largest monomial dividing every term: variable -> exponent.
std::map<Var, std::uint32_t> monomial_content(const std::vector<CPoly>& gens) {
  std::map<Var, std::uint32_t> c;
  bool first = true;
  for (const auto& g : gens)
    for (const auto& t : g.terms()) {
      std::map<Var, std::uint32_t> here(t.mono.factors().begin(), t.mono.factors().end());
      if (first) {
        c = std::move(here);
        first = false;
        continue;
      }
      for (auto it = c.begin(); it != c.end();) {
        auto h = here.find(it->first);
        if (h == here.end()) {
          it = c.erase(it);
        } else {
          it->second = std::min(it->second, h->second);
          ++it;
        }
      }
    }
  return c;
}

Rational random_nonzero(std::mt19937_64& rng, unsigned bits) {
  const std::int64_t half = std::int64_t{1} << (bits - 1);
  std::int64_t x = 0;
  while (x == 0) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * half)) - half;
  return Rational(static_cast<long>(x));
}

// A point of V(gens) with random nonzero coordinates on the surviving
// variables of the embedding; nullopt when every draw was rejected.
std::optional<std::map<Var, Rational>> sample_point(const MinimalEmbedding& me, std::mt19937_64& rng,
                                                    const ComponentOptions& opts) {
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, opts.max_samples); ++attempt) {
    std::map<Var, Rational> pt;
    for (Var v : me.surviving) pt[v] = random_nonzero(rng, opts.value_bits);
    auto value = [&](Var v) { return pt.at(v); };
    bool ok = true;
    for (const auto& g : me.ideal) ok = ok && g.poly.evaluate(value) == 0;
    if (!ok) continue;
    for (const auto& [v, e] : me.eliminated) pt[v] = e.evaluate(value);
    return pt;
  }
  return std::nullopt;
}

}  // namespace

ComponentReport component_analysis(const MinimalEmbedding& me, const StratumVars& vars, const ComponentOptions& opts) {
  GSTRATA_ASSERT(opts.value_bits >= 2 && opts.value_bits <= 62, "value_bits out of range");
  ComponentReport rep;
  rep.ambient = me.surviving.size();
  rep.rule =
      "transversal iff dim(I1+I2) = dim I1 + dim I2 - ambient and the Jacobian of I1+I2 has rank "
      "ambient - dim(I1+I2) at a sampled rational point of V(I1+I2) with nonzero free coordinates";
  const COrder ord = vars.order();
  const std::set<Var> amb(me.surviving.begin(), me.surviving.end());
  const std::vector<CPoly> gens = me.ideal_polys();
  EmbeddingOptions eo;
  eo.gb = opts.gb;

  auto part_of = [&](const std::vector<CPoly>& g) {
    ComponentPart part;
    part.ideal = groebner_basis(g, ord, opts.gb);
    MinimalEmbedding e = embed_ideal(part.ideal, me.surviving, vars, eo);
    part.dimension = e.dimension;
    part.is_affine_space = e.is_affine_space;
    part.embedding_dimension = e.ed;
    return part;
  };

  if (gens.empty()) {
    rep.parts.push_back({{}, static_cast<int>(rep.ambient), true, rep.ambient});
    return rep;
  }
  // a single shared linear factor: the content is one variable, once
  const auto content = monomial_content(gens);
  if (content.size() != 1 || content.begin()->second != 1) {
    rep.parts.push_back(part_of(gens));
    return rep;
  }

  const CPoly K = CPoly::variable(content.begin()->first);
  rep.common_factor = K;
  rep.parts.push_back(part_of({K}));
  rep.parts.push_back(part_of(ideal_quotient(gens, K, ord, opts.gb)));

  std::vector<CPoly> sum = rep.parts[1].ideal;
  sum.push_back(K);
  sum = groebner_basis(sum, ord, opts.gb);
  const int dsum = krull_dimension(sum, amb, ord, opts.gb);
  rep.intersection_dimension = dsum;
  const int expected = rep.parts[0].dimension + rep.parts[1].dimension - static_cast<int>(rep.ambient);
  rep.dimension_additive = dsum >= 0 && dsum == expected;
  if (dsum < 0) return rep;

  std::mt19937_64 rng(opts.seed);
  const MinimalEmbedding mj = embed_ideal(sum, me.surviving, vars, eo);
  auto pt = sample_point(mj, rng, opts);
  if (!pt) return rep;
  auto value = [&](Var v) {
    auto it = pt->find(v);
    return it == pt->end() ? Rational(0) : it->second;
  };
  for (const auto& g : sum) GSTRATA_ASSERT(g.evaluate(value) == 0, "sampled point is off the intersection");
  QMatrix jac;
  for (const auto& g : sum) {
    std::vector<Rational> row;
    for (Var v : me.surviving) row.push_back(g.derivative(v).evaluate(value));
    jac.push_back(std::move(row));
  }
  rep.jacobian_rank = static_cast<int>(rational_rank(std::move(jac)));
  for (Var v : me.surviving) rep.sample_point.emplace_back(v, value(v));
  rep.transversal = rep.dimension_additive && rep.jacobian_rank == static_cast<int>(rep.ambient) - dsum;
  return rep;
}

}  // namespace gstrata
