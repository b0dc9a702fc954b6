#include "gstrata/term_order.hpp"

#include <algorithm>
#include <gmpxx.h>

#include "gstrata/errors.hpp"

namespace gstrata {

namespace {

std::size_t rational_rank(const std::vector<std::vector<long long>>& rows, std::size_t cols) {
  std::vector<std::vector<mpq_class>> m;
  for (const auto& r : rows) {
    std::vector<mpq_class> q;
    for (long long v : r) q.emplace_back(static_cast<long>(v));
    m.push_back(std::move(q));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TermOrder TermOrder::lex(std::size_t nvars) { return TermOrder(Kind::Lex, nvars); }

TermOrder TermOrder::degrevlex(std::size_t nvars) { return TermOrder(Kind::DegRevLex, nvars); }

TermOrder TermOrder::weight(std::size_t nvars, std::vector<std::vector<long long>> rows) {
  for (const auto& r : rows)
    if (r.size() != nvars)
      throw PreconditionError("weight row has " + std::to_string(r.size()) +
                              " entries, expected " + std::to_string(nvars));
  const bool has_degree_row =
      !rows.empty() && std::all_of(rows[0].begin(), rows[0].end(), [](long long v) { return v == 1; });
  if (!has_degree_row) rows.insert(rows.begin(), std::vector<long long>(nvars, 1));
  if (rational_rank(rows, nvars) != nvars)
    throw PreconditionError("weight matrix does not have full rank " + std::to_string(nvars));
  TermOrder t(Kind::Weight, nvars);
  for (const auto& r : rows) {
    std::vector<long long> idx(nvars);
    for (std::size_t c = 0; c < nvars; ++c) idx[nvars - 1 - c] = r[c];
    t.index_rows_.push_back(std::move(idx));
  }
  for (std::size_t i = 1; i < nvars; ++i)
    if (t.compare(Monomial::variable(nvars, i), Monomial::variable(nvars, i - 1)) <= 0)
      throw PreconditionError("weight matrix does not respect X" + std::to_string(i) + " > X" +
                              std::to_string(i - 1));
  return t;
}

TermOrder TermOrder::segment_weight(const std::vector<long long>& w) {
  const std::size_t n1 = w.size();
  if (n1 < 2) throw PreconditionError("segment weight needs at least two variables");
  std::vector<std::vector<long long>> rows;
  rows.emplace_back(n1, 1);
  rows.push_back(w);
  // Unit rows for X_{n-2}, ..., X_0; bracket column of X_k is n - k.
  for (std::size_t k = n1 - 2; k-- > 0;) {
    std::vector<long long> e(n1, 0);
    e[n1 - 1 - k] = 1;
    rows.push_back(std::move(e));
  }
  return weight(n1, std::move(rows));
}

std::vector<std::vector<long long>> TermOrder::rows() const {
  std::vector<std::vector<long long>> out;
  for (const auto& r : index_rows_) {
    std::vector<long long> b(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) b[nvars_ - 1 - i] = r[i];
    out.push_back(std::move(b));
  }
  return out;
}

std::strong_ordering TermOrder::compare(const Monomial& a, const Monomial& b) const {
  if (a.nvars() != nvars_ || b.nvars() != nvars_)
    throw PreconditionError("term order applied to monomials with wrong variable count");
  return compare_vectors(a.exponents(), b.exponents());
}

std::strong_ordering TermOrder::compare_vectors(std::span<const int> a,
                                                std::span<const int> b) const {
  switch (kind_) {
    case Kind::Lex:
      for (std::size_t i = nvars_; i-- > 0;)
        if (a[i] != b[i]) return a[i] <=> b[i];
      return std::strong_ordering::equal;
    case Kind::DegRevLex: {
      long long da = 0, db = 0;
      for (std::size_t i = 0; i < nvars_; ++i) da += a[i], db += b[i];
      if (da != db) return da <=> db;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (a[i] != b[i]) return b[i] <=> a[i];
      return std::strong_ordering::equal;
    }
    case Kind::Weight:
      for (const auto& row : index_rows_) {
        long long wa = 0, wb = 0;
        for (std::size_t i = 0; i < nvars_; ++i) wa += row[i] * a[i], wb += row[i] * b[i];
        if (wa != wb) return wa <=> wb;
      }
      return std::strong_ordering::equal;
  }
  return std::strong_ordering::equal;
}

std::vector<long long> TermOrder::key(std::span<const int> v) const {
  std::vector<long long> k;
  switch (kind_) {
    case Kind::Lex:
      for (std::size_t i = nvars_; i-- > 0;) k.push_back(v[i]);
      break;
    case Kind::DegRevLex: {
      long long d = 0;
      for (std::size_t i = 0; i < nvars_; ++i) d += v[i];
      k.push_back(d);
      for (std::size_t i = 0; i + 1 < nvars_; ++i) k.push_back(-static_cast<long long>(v[i]));
      break;
    }
    case Kind::Weight:
      for (const auto& row : index_rows_) {
        long long w = 0;
        for (std::size_t i = 0; i < nvars_; ++i) w += row[i] * v[i];
        k.push_back(w);
      }
      break;
  }
  return k;
}

std::string TermOrder::name() const {
  switch (kind_) {
    case Kind::Lex:
      return "lex";
    case Kind::DegRevLex:
      return "degrevlex";
    case Kind::Weight: {
      std::string s = "weight(";
      bool first_row = true;
      for (const auto& r : rows()) {
        if (!first_row) s += ';';
        first_row = false;
        for (std::size_t c = 0; c < r.size(); ++c) s += (c ? "," : "") + std::to_string(r[c]);
      }
      return s + ")";
    }
  }
  return "?";
}

void sort_descending(std::vector<Monomial>& ms, const TermOrder& ord) {
  std::sort(ms.begin(), ms.end(), Descending{&ord});
}

}  // namespace gstrata
