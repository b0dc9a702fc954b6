#include "gstrata/borel.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "gstrata/errors.hpp"

namespace gstrata {

bool is_borel_fixed(const MonomialIdeal& j) {
  const std::size_t n = j.nvars();
  for (const auto& g : j.generators())
    for (std::size_t i = 1; i < n; ++i)
      if (g[i - 1] > 0 && !j.contains(g.shifted(i - 1, i))) return false;
  return true;
}

bool borel_geq(const Monomial& a, const Monomial& b) {
  if (a.nvars() != b.nvars() || a.degree() != b.degree()) return false;
  long long sa = 0, sb = 0;
  for (std::size_t k = a.nvars(); k-- > 0;) {
    sa += a[k];
    sb += b[k];
    if (sa < sb) return false;
  }
  return true;
}

BorelExtremes borel_extremes(const MonomialIdeal& j, int d) {
  if (!is_borel_fixed(j)) throw PreconditionError("ideal " + j.to_string() + " is not Borel-fixed");
  const std::size_t n = j.nvars();
  BorelExtremes ex;
  for (const auto& m : j.degree_part(d)) {
    bool minimal = true;
    for (std::size_t i = 1; i < n && minimal; ++i)
      if (m[i] > 0 && j.contains(m.shifted(i, i - 1))) minimal = false;
    if (minimal) ex.minimal_in_ideal.push_back(m);
  }
  for (const auto& m : j.complement(d)) {
    bool maximal = true;
    for (std::size_t i = 1; i < n && maximal; ++i)
      if (m[i - 1] > 0 && !j.contains(m.shifted(i - 1, i))) maximal = false;
    if (maximal) ex.maximal_in_complement.push_back(m);
  }
  return ex;
}

MonomialIdeal lexsegment_ideal(const std::vector<int>& a) {
  const std::size_t nvars = a.size() + 1;
  std::vector<int> e(nvars, 0);
  int r = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < 0) throw PreconditionError("negative lexsegment exponent");
    e[nvars - 1 - k] = a[k];
    r += a[k];
  }
  const Monomial bound(e);
  const TermOrder lex = TermOrder::lex(nvars);
  std::vector<Monomial> gens;
  for (auto& m : monomials_of_degree(nvars, r))
    if (lex.compare(m, bound) >= 0) gens.push_back(std::move(m));
  return MonomialIdeal(nvars, std::move(gens));
}

bool is_segment(const MonomialIdeal& j, int d, const TermOrder& ord) {
  if (j.is_zero() || !j.generated_in_degree(d))
    throw PreconditionError("ideal " + j.to_string() + " is not generated in degree " + std::to_string(d));
  auto gens = j.sorted_generators(ord);
  auto comp = j.complement(d);
  if (comp.empty()) return true;
  sort_descending(comp, ord);
  return ord.compare(gens.back(), comp.front()) > 0;
}

namespace {

long long dot(const std::vector<long long>& w, const Monomial& m) {
  const std::size_t n = m.nvars();
  long long s = 0;
  for (std::size_t k = 0; k < n; ++k) s += w[k] * m[n - 1 - k];
  return s;
}

}  // namespace

bool weight_separates(const BorelExtremes& ex, const std::vector<long long>& w) {
  for (const auto& b : ex.minimal_in_ideal)
    for (const auto& a : ex.maximal_in_complement)
      if (dot(w, b) <= dot(w, a)) return false;
  return true;
}

bool admissible_segment_weight(const std::vector<long long>& w) {
  const std::size_t N = w.size();
  if (N < 2) return false;
  // w[k] is a_{n-k}
  if (w[N - 1] < 1) return false;
  if (N == 2) return w[0] > w[1];
  for (std::size_t k = 2; k + 1 < N; ++k)
    if (w[k] < w[k + 1]) return false;  // a_{n-2} >= ... >= a_0
  return w[0] > w[1] && w[1] > w[2];
}

SegmentSearchResult find_segment_order(const MonomialIdeal& j, int d, const SegmentSearchOptions& opts) {
  if (j.is_zero() || !j.generated_in_degree(d))
    throw PreconditionError("ideal " + j.to_string() + " is not generated in degree " + std::to_string(d));
  const BorelExtremes ex = borel_extremes(j, d);
  const std::size_t N = j.nvars();
  if (N < 2) throw PreconditionError("segment search needs at least two variables");

  SegmentSearchResult res;
  std::vector<std::pair<std::size_t, std::size_t>> open;  // pairs violated by every candidate so far
  for (std::size_t b = 0; b < ex.minimal_in_ideal.size(); ++b)
    for (std::size_t a = 0; a < ex.maximal_in_complement.size(); ++a) open.emplace_back(b, a);

  // Build a_0, a_1, ..., a_n (index order), then reverse to bracket layout.
  std::vector<long long> idx(N);
  std::function<bool(std::size_t, long long)> rec = [&](std::size_t k, long long left) -> bool {
    if (k == N - 1) {
      long long lo = N == 2 ? idx[0] + 1 : idx[k - 1] + 1;
      if (left < lo) return false;
      idx[k] = left;
      std::vector<long long> w(idx.rbegin(), idx.rend());
      ++res.candidates_tried;
      if (weight_separates(ex, w)) {
        res.found = true;
        res.weight = std::move(w);
        return true;
      }
      std::erase_if(open, [&](const auto& p) {
        return dot(w, ex.minimal_in_ideal[p.first]) > dot(w, ex.maximal_in_complement[p.second]);
      });
      return false;
    }
    long long lo = 1;
    if (k > 0) lo = idx[k - 1] + (k == N - 2 && N >= 3 ? 1 : 0);
    for (long long v = lo; v <= left; ++v) {
      idx[k] = v;
      if (rec(k + 1, left - v)) return true;
    }
    return false;
  };
  for (long long s = static_cast<long long>(N); s <= opts.max_sum; ++s)
    if (rec(0, s)) return res;

  if (!open.empty())
    res.certificate = std::make_pair(ex.minimal_in_ideal[open[0].first], ex.maximal_in_complement[open[0].second]);
  return res;
}

}  // namespace gstrata
