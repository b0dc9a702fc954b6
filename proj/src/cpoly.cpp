#include "gstrata/cpoly.hpp"

#include <algorithm>
#include <unordered_map>

#include "gstrata/errors.hpp"

namespace gstrata {

// ---------------------------------------------------------------- CMonomial

CMonomial::CMonomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!f_.empty() && f_.back().first == v)
      f_.back().second += e;
    else
      f_.emplace_back(v, e);
    deg_ += e;
  }
}

CMonomial CMonomial::variable(Var v, std::uint32_t e) {
  CMonomial m;
  if (e > 0) {
    m.f_.emplace_back(v, e);
    m.deg_ = e;
  }
  return m;
}

std::uint32_t CMonomial::exponent(Var v) const {
  auto it = std::lower_bound(f_.begin(), f_.end(), Factor{v, 0});
  return (it != f_.end() && it->first == v) ? it->second : 0;
}

bool CMonomial::divides(const CMonomial& other) const {
  if (deg_ > other.deg_) return false;
  auto j = other.f_.begin();
  for (const auto& [v, e] : f_) {
    while (j != other.f_.end() && j->first < v) ++j;
    if (j == other.f_.end() || j->first != v || j->second < e) return false;
  }
  return true;
}

bool CMonomial::coprime_with(const CMonomial& other) const {
  auto i = f_.begin();
  auto j = other.f_.begin();
  while (i != f_.end() && j != other.f_.end()) {
    if (i->first == j->first) return false;
    if (i->first < j->first)
      ++i;
    else
      ++j;
  }
  return true;
}

CMonomial CMonomial::operator*(const CMonomial& other) const {
  CMonomial r;
  r.f_.reserve(f_.size() + other.f_.size());
  auto i = f_.begin();
  auto j = other.f_.begin();
  while (i != f_.end() || j != other.f_.end()) {
    if (j == other.f_.end() || (i != f_.end() && i->first < j->first)) {
      r.f_.push_back(*i++);
    } else if (i == f_.end() || j->first < i->first) {
      r.f_.push_back(*j++);
    } else {
      r.f_.emplace_back(i->first, i->second + j->second);
      ++i, ++j;
    }
  }
  r.deg_ = deg_ + other.deg_;
  return r;
}

CMonomial CMonomial::operator/(const CMonomial& other) const {
  if (!other.divides(*this)) throw PreconditionError("C-monomial division is not exact");
  CMonomial r;
  auto j = other.f_.begin();
  for (const auto& [v, e] : f_) {
    std::uint32_t sub = 0;
    if (j != other.f_.end() && j->first == v) sub = (j++)->second;
    if (e > sub) r.f_.emplace_back(v, e - sub);
  }
  r.deg_ = deg_ - other.deg_;
  return r;
}

CMonomial CMonomial::lcm(const CMonomial& other) const {
  CMonomial r;
  auto i = f_.begin();
  auto j = other.f_.begin();
  while (i != f_.end() || j != other.f_.end()) {
    if (j == other.f_.end() || (i != f_.end() && i->first < j->first)) {
      r.f_.push_back(*i++);
    } else if (i == f_.end() || j->first < i->first) {
      r.f_.push_back(*j++);
    } else {
      r.f_.emplace_back(i->first, std::max(i->second, j->second));
      ++i, ++j;
    }
  }
  for (const auto& f : r.f_) r.deg_ += f.second;
  return r;
}

CMonomial CMonomial::without(Var v) const {
  CMonomial r;
  for (const auto& f : f_)
    if (f.first != v) {
      r.f_.push_back(f);
      r.deg_ += f.second;
    }
  return r;
}

std::size_t CMonomialHash::operator()(const CMonomial& m) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& [v, e] : m.factors()) {
    h = (h ^ v) * 0x100000001b3ULL;
    h = (h ^ e) * 0x100000001b3ULL;
  }
  return h;
}

// ------------------------------------------------------------------ orders

std::strong_ordering degrevlex_compare(const CMonomial& a, const CMonomial& b) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  // The smallest variable where exponents differ decides; smaller exponent wins.
  auto fa = a.factors();
  auto fb = b.factors();
  std::size_t i = 0, j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i] == fb[j]) {
      ++i, ++j;
      continue;
    }
    if (fa[i].first == fb[j].first) return fb[j].second <=> fa[i].second;
    // The variable present in only one of them has exponent 0 in the other.
    return fa[i].first < fb[j].first ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (i < fa.size()) return std::strong_ordering::less;
  if (j < fb.size()) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

namespace {

std::strong_ordering lex_compare(const CMonomial& a, const CMonomial& b) {
  auto fa = a.factors();
  auto fb = b.factors();
  std::size_t i = fa.size(), j = fb.size();
  while (i > 0 && j > 0) {
    const auto& x = fa[i - 1];
    const auto& y = fb[j - 1];
    if (x == y) {
      --i, --j;
      continue;
    }
    if (x.first == y.first) return x.second <=> y.second;
    return x.first <=> y.first;
  }
  if (i > 0) return std::strong_ordering::greater;
  if (j > 0) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

std::pair<CMonomial, CMonomial> split_by(const CMonomial& m, const std::set<Var>& drop) {
  std::vector<CMonomial::Factor> in, out;
  for (const auto& f : m.factors()) (drop.count(f.first) ? in : out).push_back(f);
  return {CMonomial(std::move(in)), CMonomial(std::move(out))};
}

}  // namespace

LambdaTable::LambdaTable(TermOrder order, std::vector<std::vector<int>> lambda_degrees)
    : xorder(std::move(order)), degrees(std::move(lambda_degrees)) {
  keys.reserve(degrees.size());
  for (const auto& d : degrees) keys.push_back(xorder.key(d));
}

std::vector<int> LambdaTable::degree_of(const CMonomial& m) const {
  std::vector<int> d(xorder.nvars(), 0);
  for (const auto& [v, e] : m.factors())
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += static_cast<int>(e) * degrees.at(v)[i];
  return d;
}

COrder COrder::lex() { return COrder(Kind::Lex); }
COrder COrder::degrevlex() { return COrder(Kind::DegRevLex); }

COrder COrder::lambda(std::shared_ptr<const LambdaTable> table) {
  COrder o(Kind::Lambda);
  o.table_ = std::move(table);
  return o;
}

COrder COrder::elimination(std::set<Var> drop, const COrder& base) {
  COrder o(Kind::Elimination);
  o.drop_ = std::move(drop);
  o.base_ = std::make_shared<const COrder>(base);
  return o;
}

std::strong_ordering COrder::compare(const CMonomial& a, const CMonomial& b) const {
  switch (kind_) {
    case Kind::Lex:
      return lex_compare(a, b);
    case Kind::DegRevLex:
      return degrevlex_compare(a, b);
    case Kind::Lambda: {
      const auto& keys = table_->keys;
      const std::size_t len = keys.empty() ? 0 : keys[0].size();
      for (std::size_t r = 0; r < len; ++r) {
        long long ka = 0, kb = 0;
        for (const auto& [v, e] : a.factors()) ka += static_cast<long long>(e) * keys.at(v)[r];
        for (const auto& [v, e] : b.factors()) kb += static_cast<long long>(e) * keys.at(v)[r];
        if (ka != kb) return ka <=> kb;
      }
      if (a.degree() != b.degree()) return b.degree() <=> a.degree();
      return degrevlex_compare(a, b);
    }
    case Kind::Elimination: {
      auto [ai, ao] = split_by(a, drop_);
      auto [bi, bo] = split_by(b, drop_);
      auto c = degrevlex_compare(ai, bi);
      if (c != 0) return c;
      return base_->compare(ao, bo);
    }
  }
  return std::strong_ordering::equal;
}

namespace {

void degrevlex_rows(const std::vector<bool>& active, std::vector<std::vector<long long>>& rows) {
  const std::size_t n = active.size();
  std::vector<long long> ones(n, 0);
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < n; ++i)
    if (active[i]) ones[i] = 1, cols.push_back(i);
  if (cols.empty()) return;
  rows.push_back(std::move(ones));
  for (std::size_t k = 0; k + 1 < cols.size(); ++k) {
    std::vector<long long> r(n, 0);
    r[cols[k]] = -1;
    rows.push_back(std::move(r));
  }
}

}  // namespace

std::vector<std::vector<long long>> COrder::matrix(const std::vector<Var>& vars,
                                                   const std::vector<bool>& active) const {
  const std::size_t n = vars.size();
  std::vector<std::vector<long long>> rows;
  switch (kind_) {
    case Kind::Lex:
      for (std::size_t i = n; i-- > 0;)
        if (active[i]) {
          std::vector<long long> r(n, 0);
          r[i] = 1;
          rows.push_back(std::move(r));
        }
      break;
    case Kind::DegRevLex:
      degrevlex_rows(active, rows);
      break;
    case Kind::Lambda: {
      const auto& keys = table_->keys;
      const std::size_t len = keys.empty() ? 0 : keys[0].size();
      for (std::size_t k = 0; k < len; ++k) {
        std::vector<long long> r(n, 0);
        for (std::size_t i = 0; i < n; ++i)
          if (active[i]) r[i] = keys.at(vars[i])[k];
        rows.push_back(std::move(r));
      }
      std::vector<long long> neg(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        if (active[i]) neg[i] = -1;
      rows.push_back(std::move(neg));
      degrevlex_rows(active, rows);
      break;
    }
    case Kind::Elimination: {
      std::vector<bool> in(n), out(n);
      for (std::size_t i = 0; i < n; ++i) {
        const bool d = drop_.count(vars[i]) > 0;
        in[i] = active[i] && d;
        out[i] = active[i] && !d;
      }
      degrevlex_rows(in, rows);
      auto rest = base_->matrix(vars, out);
      rows.insert(rows.end(), rest.begin(), rest.end());
      break;
    }
  }
  return rows;
}

bool operator==(const COrder& a, const COrder& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case COrder::Kind::Lex:
    case COrder::Kind::DegRevLex:
      return true;
    case COrder::Kind::Lambda:
      return a.table_ == b.table_;
    case COrder::Kind::Elimination:
      return a.drop_ == b.drop_ && *a.base_ == *b.base_;
  }
  return false;
}

// ------------------------------------------------------------------- CPoly

namespace {

bool canon_greater(const CTerm& a, const CTerm& b) { return degrevlex_compare(a.mono, b.mono) > 0; }

}  // namespace

CPoly::CPoly(const Rational& c) {
  if (c != 0) terms_.push_back({CMonomial(), c});
}

CPoly CPoly::variable(Var v) { return monomial(CMonomial::variable(v)); }

CPoly CPoly::monomial(CMonomial m, Rational c) {
  CPoly p;
  if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

CPoly CPoly::from_terms(std::vector<CTerm> terms) {
  std::sort(terms.begin(), terms.end(), canon_greater);
  CPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
      if (p.terms_.back().coef == 0) p.terms_.pop_back();
    } else if (t.coef != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Rational CPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
  return 0;
}

std::uint32_t CPoly::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

std::uint32_t CPoly::low_degree() const { return terms_.empty() ? 0 : terms_.back().mono.degree(); }

std::set<Var> CPoly::variables() const {
  std::set<Var> s;
  for (const auto& t : terms_)
    for (const auto& f : t.mono.factors()) s.insert(f.first);
  return s;
}

bool CPoly::contains_var(Var v) const {
  for (const auto& t : terms_)
    if (t.mono.exponent(v) > 0) return true;
  return false;
}

CPoly CPoly::component(std::uint32_t k) const {
  CPoly p;
  for (const auto& t : terms_)
    if (t.mono.degree() == k) p.terms_.push_back(t);
  return p;
}

Rational CPoly::linear_coefficient(Var v) const {
  const CMonomial m = CMonomial::variable(v);
  for (const auto& t : terms_)
    if (t.mono == m) return t.coef;
  return 0;
}

CPoly CPoly::operator-() const {
  CPoly p = *this;
  for (auto& t : p.terms_) t.coef = -t.coef;
  return p;
}

namespace {

void merge_into(std::vector<CTerm>& a, const std::vector<CTerm>& b, const Rational& scale,
                const CMonomial* shift) {
  if (b.empty() || scale == 0) return;
  std::vector<CTerm> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(std::move(a[i++]));
      continue;
    }
    CMonomial bm = shift ? b[j].mono * *shift : b[j].mono;
    if (i == a.size()) {
      out.push_back({std::move(bm), b[j].coef * scale});
      ++j;
      continue;
    }
    auto c = degrevlex_compare(a[i].mono, bm);
    if (c > 0) {
      out.push_back(std::move(a[i++]));
    } else if (c < 0) {
      out.push_back({std::move(bm), b[j].coef * scale});
      ++j;
    } else {
      Rational s = a[i].coef + b[j].coef * scale;
      if (s != 0) out.push_back({std::move(a[i].mono), std::move(s)});
      ++i, ++j;
    }
  }
  a = std::move(out);
}

}  // namespace

CPoly& CPoly::operator+=(const CPoly& o) {
  merge_into(terms_, o.terms_, Rational(1), nullptr);
  return *this;
}

CPoly& CPoly::operator-=(const CPoly& o) {
  merge_into(terms_, o.terms_, Rational(-1), nullptr);
  return *this;
}

CPoly& CPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= c;
  return *this;
}

void CPoly::add_scaled(const CPoly& b, const Rational& c, const CMonomial& m) {
  merge_into(terms_, b.terms_, c, m.is_one() ? nullptr : &m);
}

CPoly CPoly::times(const CMonomial& m, const Rational& c) const {
  CPoly p;
  if (c == 0) return p;
  p.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves any term order.
  for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coef * c});
  return p;
}

CPoly operator*(const CPoly& a, const CPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1) return b.times(a.terms_[0].mono, a.terms_[0].coef);
  if (b.size() == 1) return a.times(b.terms_[0].mono, b.terms_[0].coef);
  std::unordered_map<CMonomial, Rational, CMonomialHash> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) acc[x.mono * y.mono] += x.coef * y.coef;
  std::vector<CTerm> ts;
  ts.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) ts.push_back({m, std::move(c)});
  return CPoly::from_terms(std::move(ts));
}

CPoly CPoly::substitute(const std::map<Var, CPoly>& images) const {
  if (images.empty()) return *this;
  return substitute([&](Var v) -> const CPoly* {
    auto it = images.find(v);
    return it == images.end() ? nullptr : &it->second;
  });
}

CPoly CPoly::substitute(const std::function<const CPoly*(Var)>& image) const {
  std::map<std::pair<Var, std::uint32_t>, CPoly> powers;
  auto power = [&](Var v, const CPoly& img, std::uint32_t e) -> const CPoly& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    CPoly p = img;
    for (std::uint32_t k = 1; k < e; ++k) p = p * img;
    return powers.emplace(key, std::move(p)).first->second;
  };
  std::unordered_map<CMonomial, Rational, CMonomialHash> acc;
  bool touched = false;
  std::vector<CMonomial::Factor> kept;
  std::vector<std::pair<const CPoly*, CMonomial::Factor>> mapped;
  for (const auto& t : terms_) {
    kept.clear();
    mapped.clear();
    for (const auto& f : t.mono.factors()) {
      const CPoly* img = image(f.first);
      if (img)
        mapped.emplace_back(img, f);
      else
        kept.push_back(f);
    }
    if (mapped.empty()) {
      acc[t.mono] += t.coef;
      continue;
    }
    touched = true;
    CPoly prod = CPoly::monomial(CMonomial(kept), t.coef);
    for (const auto& [img, f] : mapped) {
      prod = prod * power(f.first, *img, f.second);
      if (prod.is_zero()) break;
    }
    for (auto& pt : prod.terms_) acc[pt.mono] += pt.coef;
  }
  if (!touched) return *this;
  std::vector<CTerm> ts;
  ts.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) ts.push_back({m, std::move(c)});
  return from_terms(std::move(ts));
}

Rational CPoly::evaluate(const std::function<Rational(Var)>& value) const {
  std::map<Var, Rational> cache;
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational p = t.coef;
    for (const auto& [v, e] : t.mono.factors()) {
      auto it = cache.find(v);
      if (it == cache.end()) it = cache.emplace(v, value(v)).first;
      for (std::uint32_t k = 0; k < e; ++k) p *= it->second;
    }
    sum += p;
  }
  return sum;
}

CPoly CPoly::derivative(Var v) const {
  std::vector<CTerm> ts;
  for (const auto& t : terms_) {
    std::uint32_t e = t.mono.exponent(v);
    if (e == 0) continue;
    ts.push_back({t.mono / CMonomial::variable(v), t.coef * static_cast<unsigned long>(e)});
  }
  return from_terms(std::move(ts));
}

CPoly CPoly::normalized() const {
  if (terms_.empty()) return {};
  mpz_class den = 1, num = 0;
  for (const auto& t : terms_) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coef.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coef.get_num_mpz_t());
  }
  Rational scale(den, num);
  scale.canonicalize();
  if (terms_.front().coef < 0) scale = -scale;
  CPoly p = *this;
  p *= scale;
  return p;
}

CPoly CPoly::divide_exact(const CPoly& d, bool& ok) const {
  ok = false;
  if (d.is_zero()) return {};
  CPoly rem = *this;
  CPoly quot;
  const CTerm& ld = d.terms_.front();
  while (!rem.is_zero()) {
    const CTerm& lr = rem.terms_.front();
    if (!ld.mono.divides(lr.mono)) return {};
    CMonomial q = lr.mono / ld.mono;
    Rational c = lr.coef / ld.coef;
    quot += CPoly::monomial(q, c);
    rem.add_scaled(d, -c, q);
  }
  ok = true;
  return quot;
}

std::string CPoly::to_string(const std::function<std::string(Var)>& name) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coef;
    if (first) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    Rational a = abs(c);
    std::string mono;
    for (const auto& [v, e] : t.mono.factors()) {
      if (!mono.empty()) mono += '*';
      mono += name(v);
      if (e > 1) mono += '^' + std::to_string(e);
    }
    if (mono.empty())
      out += a.get_str();
    else if (a == 1)
      out += mono;
    else
      out += a.get_str() + '*' + mono;
  }
  return out;
}

bool operator==(const CPoly& a, const CPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
  return true;
}

std::vector<CTerm> sorted_terms(const CPoly& p, const COrder& ord) {
  std::vector<CTerm> ts = p.terms();
  std::sort(ts.begin(), ts.end(),
            [&](const CTerm& a, const CTerm& b) { return ord.compare(a.mono, b.mono) > 0; });
  return ts;
}

const CTerm& leading_term(const CPoly& p, const COrder& ord) {
  GSTRATA_ASSERT(!p.is_zero(), "leading term of zero polynomial");
  const CTerm* best = &p.terms().front();
  for (const auto& t : p.terms())
    if (ord.compare(t.mono, best->mono) > 0) best = &t;
  return *best;
}

bool canonical_less(const CPoly& a, const CPoly& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t k = 0; k < x.size() && k < y.size(); ++k) {
    auto c = degrevlex_compare(x[k].mono, y[k].mono);
    if (c != 0) return c < 0;
    if (x[k].coef != y[k].coef) return x[k].coef < y[k].coef;
  }
  return x.size() < y.size();
}

std::size_t linear_rank(const std::vector<CPoly>& linear_forms) {
  std::vector<std::map<Var, Rational>> rows;
  for (const auto& f : linear_forms) {
    std::map<Var, Rational> r;
    for (const auto& t : f.terms())
      if (t.mono.degree() == 1) r[t.mono.factors()[0].first] = t.coef;
    if (!r.empty()) rows.push_back(std::move(r));
  }
  std::vector<std::map<Var, Rational>> basis;  // each with a distinct pivot = last key
  for (auto r : rows) {
    for (const auto& b : basis) {
      Var piv = b.rbegin()->first;
      auto it = r.find(piv);
      if (it == r.end()) continue;
      Rational f = it->second / b.rbegin()->second;
      for (const auto& [v, c] : b) {
        Rational& x = r[v];
        x -= f * c;
        if (x == 0) r.erase(v);
      }
    }
    if (!r.empty()) {
      // Keep basis pivots distinct: eliminate the new pivot from older rows.
      Var piv = r.rbegin()->first;
      for (auto& b : basis) {
        auto it = b.find(piv);
        if (it == b.end()) continue;
        Rational f = it->second / r.rbegin()->second;
        for (const auto& [v, c] : r) {
          Rational& x = b[v];
          x -= f * c;
          if (x == 0) b.erase(v);
        }
      }
      basis.push_back(std::move(r));
    }
  }
  return basis.size();
}

}  // namespace gstrata
