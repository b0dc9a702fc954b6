#include "gstrata/hilbert.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "gstrata/errors.hpp"

namespace gstrata {

namespace {

mpq_class q(long long v) { return mpq_class(static_cast<long>(v)); }
mpq_class q(long long a, long long b) {
  mpq_class r(mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(b)));
  r.canonicalize();
  return r;
}

}  // namespace

// ------------------------------------------------------------------ UniPoly

UniPoly::UniPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::binomial_in_z(long long shift, int k) {
  UniPoly p = constant(1);
  for (int i = 1; i <= k; ++i) {
    // (z + shift - i + 1) / i
    UniPoly f({q(shift - i + 1, i), q(1, i)});
    p = p * f;
  }
  return p;
}

mpq_class UniPoly::operator()(const mpq_class& z) const {
  mpq_class v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * z + *it;
  return v;
}

bool UniPoly::integer_valued() const {
  // A degree-d polynomial is integer valued iff it is on d+1 consecutive integers.
  for (int z = 0; z <= std::max(0, degree()); ++z)
    if ((*this)(z).get_den() != 1) return false;
  return true;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpq_class> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UniPoly(std::move(r));
}

std::string UniPoly::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const mpq_class& c = c_[k];
    if (c == 0) continue;
    mpq_class a = abs(c);
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    std::string mono = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
    if (mono.empty())
      out += a.get_str();
    else if (a == 1)
      out += mono;
    else
      out += a.get_str() + "*" + mono;
  }
  return out;
}

UniPoly UniPoly::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty polynomial");
  std::map<int, mpq_class> acc;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw ParseError("expected + or - at position " + std::to_string(i) + " in '" + s + "'");
    }
    std::size_t end = i;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(i, end - i);
    if (term.empty()) throw ParseError("empty term in '" + s + "'");
    mpq_class coef = 1;
    int power = 0;
    std::size_t zpos = term.find('z');
    std::string cpart = zpos == std::string::npos ? term : term.substr(0, zpos);
    if (zpos != std::string::npos) {
      if (!cpart.empty()) {
        if (cpart.back() != '*') throw ParseError("bad term '" + term + "'");
        cpart.pop_back();
      }
      std::string rest = term.substr(zpos + 1);
      if (rest.empty()) {
        power = 1;
      } else {
        if (rest[0] != '^' || rest.size() < 2) throw ParseError("bad power in '" + term + "'");
        for (std::size_t k = 1; k < rest.size(); ++k)
          if (!std::isdigit(static_cast<unsigned char>(rest[k]))) throw ParseError("bad power in '" + term + "'");
        power = std::stoi(rest.substr(1));
      }
    }
    if (!cpart.empty()) {
      for (char ch : cpart)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
          throw ParseError("only integer coefficients are allowed: '" + term + "'");
      coef = mpq_class(cpart);
    }
    acc[power] += sign * coef;
    i = end;
  }
  int deg = acc.empty() ? 0 : acc.rbegin()->first;
  std::vector<mpq_class> c(deg + 1, 0);
  for (auto& [k, v] : acc) c[k] = v;
  return UniPoly(std::move(c));
}

// -------------------------------------------------------- Hilbert function

namespace {

using Numer = std::vector<long long>;

Numer add(const Numer& a, const Numer& b, int shift = 0) {
  Numer r(std::max(a.size(), b.size() + shift), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] += b[i];
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

Numer mul(const Numer& a, const Numer& b) {
  if (a.empty() || b.empty()) return {};
  Numer r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

Numer numerator(const MonomialIdeal& j) {
  if (j.is_zero()) return {1};
  if (j.is_unit()) return {};
  const auto& g = j.generators();
  const std::size_t n = j.nvars();
  // Base case: pairwise coprime generators give prod (1 - t^deg).
  bool pairwise = true;
  for (std::size_t a = 0; a < g.size() && pairwise; ++a)
    for (std::size_t b = a + 1; b < g.size() && pairwise; ++b)
      if (!coprime(g[a], g[b])) pairwise = false;
  if (pairwise) {
    Numer r = {1};
    for (const auto& m : g) {
      Numer f(m.degree() + 1, 0);
      f[0] = 1;
      f[m.degree()] -= 1;
      r = mul(r, f);
    }
    return r;
  }
  // Pivot on the variable occurring in most generators, exponent 1.
  std::size_t best = 0;
  int count = -1;
  for (std::size_t v = 0; v < n; ++v) {
    int c = 0;
    for (const auto& m : g)
      if (m[v] > 0) ++c;
    if (c > count) count = c, best = v;
  }
  Monomial x = Monomial::variable(n, best);
  Numer a = numerator(j + MonomialIdeal(n, {x}));
  Numer b = numerator(j.colon(x));
  return add(a, b, 1);
}

}  // namespace

std::vector<long long> hilbert_numerator(const MonomialIdeal& j) { return numerator(j); }

namespace {

long long hf_from_numerator(const Numer& N, std::size_t nvars, int d) {
  if (nvars == 0) return d == 0 && !N.empty() ? N[0] : 0;
  const long long n = static_cast<long long>(nvars) - 1;
  long long s = 0;
  for (std::size_t k = 0; k < N.size(); ++k)
    if (static_cast<int>(k) <= d) s += N[k] * binomial(d - static_cast<long long>(k) + n, n);
  return s;
}

}  // namespace

long long hilbert_function(const MonomialIdeal& j, int d) {
  if (d < 0) throw PreconditionError("negative degree");
  return hf_from_numerator(numerator(j), j.nvars(), d);
}

HilbertData hilbert_polynomial(const MonomialIdeal& j, const HilbertOptions& opts) {
  const Numer N = numerator(j);
  const int n = static_cast<int>(j.nvars()) - 1;
  // Past deg N - n every summand binomial(d - k + n, n) is polynomial in d.
  const int start = std::max(0, static_cast<int>(N.size()) - 1 - n);
  const int npts = n + 1;
  const int extra = n + 2;  // deg p <= n
  const int last = start + npts + extra - 1;
  if (last > opts.max_window_degree)
    throw BudgetExceeded("Hilbert polynomial window would reach degree " + std::to_string(last) +
                         " > " + std::to_string(opts.max_window_degree));
  HilbertData out;
  out.window_start = start;
  for (int d = start; d <= last; ++d) out.values.push_back(hf_from_numerator(N, j.nvars(), d));

  // Lagrange interpolation on the first npts points.
  UniPoly p;
  for (int a = 0; a < npts; ++a) {
    UniPoly basis = UniPoly::constant(q(out.values[a]));
    for (int b = 0; b < npts; ++b) {
      if (a == b) continue;
      basis = basis * UniPoly({q(-(start + b), a - b), q(1, a - b)});
    }
    p = p + basis;
  }
  for (int k = npts; k < npts + extra; ++k)
    if (p(start + k) != q(out.values[k]))
      throw InternalError("Hilbert polynomial interpolation disagrees at degree " + std::to_string(start + k));
  if (!p.integer_valued()) throw InternalError("interpolated Hilbert polynomial is not integer valued");
  out.polynomial = p;
  int stab = start;
  while (stab > 0 && p(stab - 1) == q(hf_from_numerator(N, j.nvars(), stab - 1))) --stab;
  out.stabilization_degree = stab;
  return out;
}

// -------------------------------------------------------- Gotzmann number

long long gotzmann_number(const UniPoly& p, const GotzmannOptions& opts) {
  if (p.is_zero()) return 0;
  if (!p.integer_valued()) throw PreconditionError("polynomial " + p.to_string() + " is not integer valued");
  if (p.leading() < 0) throw PreconditionError("polynomial " + p.to_string() + " is not eventually positive");
  UniPoly rest = p;
  long long i = 0;
  int prev = p.degree();
  while (!rest.is_zero()) {
    if (rest.leading() < 0)
      throw PreconditionError("polynomial " + p.to_string() + " has no Gotzmann representation");
    const int b = rest.degree();
    if (b > prev) throw PreconditionError("polynomial " + p.to_string() + " has no Gotzmann representation");
    prev = b;
    ++i;
    if (i > opts.max_terms)
      throw BudgetExceeded("Gotzmann representation exceeds " + std::to_string(opts.max_terms) + " terms");
    rest = rest - UniPoly::binomial_in_z(b - i + 1, b);
  }
  return i;
}

GotzmannParams gotzmann_params(const UniPoly& p, std::size_t nvars) {
  if (nvars == 0) throw PreconditionError("need at least one variable");
  const long long n = static_cast<long long>(nvars) - 1;
  GotzmannParams g;
  g.r = gotzmann_number(p);
  g.M = binomial(n + g.r, n);
  g.M1 = binomial(n + g.r + 1, n);
  mpq_class pr = p(q(g.r)), pr1 = p(q(g.r + 1));
  g.t = g.M - pr.get_num().get_si();
  g.t1 = g.M1 - pr1.get_num().get_si();
  return g;
}

}  // namespace gstrata
