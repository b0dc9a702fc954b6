#include "gstrata/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>

#include "gstrata/errors.hpp"

namespace gstrata {

Monomial::Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw PreconditionError("negative exponent in monomial");
    degree_ += e;
  }
}

Monomial Monomial::one(std::size_t nvars) { return Monomial(std::vector<int>(nvars, 0)); }

Monomial Monomial::variable(std::size_t nvars, std::size_t index, int power) {
  if (index >= nvars) throw PreconditionError("variable index out of range");
  std::vector<int> e(nvars, 0);
  e[index] = power;
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (nvars() != other.nvars()) throw PreconditionError("monomial variable count mismatch");
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  r.degree_ += other.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  if (nvars() != other.nvars()) throw PreconditionError("monomial variable count mismatch");
  if (!other.divides(*this)) throw PreconditionError("monomial division is not exact");
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
  r.degree_ -= other.degree_;
  return r;
}

Monomial Monomial::shifted(std::size_t from, std::size_t to) const {
  if (exps_.at(from) == 0) throw PreconditionError("shift from a variable that does not divide");
  Monomial r = *this;
  r.exps_[from] -= 1;
  r.exps_.at(to) += 1;
  return r;
}

std::string Monomial::to_string() const {
  std::string out;
  for (std::size_t k = exps_.size(); k-- > 0;) {
    if (exps_[k] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'X' + std::to_string(k);
    if (exps_[k] > 1) out += '^' + std::to_string(exps_[k]);
  }
  return out.empty() ? "1" : out;
}

std::string Monomial::to_bracket() const {
  std::string out = "[";
  for (std::size_t k = exps_.size(); k-- > 0;) {
    out += std::to_string(exps_[k]);
    if (k != 0) out += ',';
  }
  return out + "]";
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (int e : m.exponents()) h = (h ^ static_cast<std::size_t>(e)) * 0x100000001b3ULL;
  return h;
}

LcmCofactors lcm_and_cofactors(const Monomial& a, const Monomial& b) {
  if (a.nvars() != b.nvars()) throw PreconditionError("monomial variable count mismatch");
  std::vector<int> l(a.nvars());
  for (std::size_t i = 0; i < l.size(); ++i) l[i] = std::max(a[i], b[i]);
  Monomial lcm(std::move(l));
  return {lcm, lcm / a, lcm / b};
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  if (a.nvars() != b.nvars()) throw PreconditionError("monomial variable count mismatch");
  std::vector<int> g(a.nvars());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(a[i], b[i]);
  return Monomial(std::move(g));
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.nvars(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view context) {
  s = trim(s);
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ParseError("bad integer '" + std::string(s) + "' in " + std::string(context));
  return v;
}

}  // namespace

Monomial parse_monomial(std::string_view text, std::size_t nvars) {
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty monomial");
  std::vector<int> e(nvars, 0);
  if (s.front() == '[') {
    if (s.back() != ']') throw ParseError("unterminated bracket monomial: " + std::string(text));
    s = s.substr(1, s.size() - 2);
    std::vector<int> listed;
    while (true) {
      auto comma = s.find(',');
      listed.push_back(parse_int(s.substr(0, comma), text));
      if (comma == std::string_view::npos) break;
      s.remove_prefix(comma + 1);
    }
    if (listed.size() != nvars)
      throw ParseError("bracket monomial " + std::string(text) + " has " +
                       std::to_string(listed.size()) + " entries, expected " +
                       std::to_string(nvars));
    for (std::size_t k = 0; k < nvars; ++k) {
      if (listed[k] < 0) throw ParseError("negative exponent in " + std::string(text));
      e[nvars - 1 - k] = listed[k];
    }
    return Monomial(std::move(e));
  }
  if (s == "1") return Monomial(std::move(e));
  while (!s.empty()) {
    auto star = s.find('*');
    std::string_view factor = trim(s.substr(0, star));
    if (factor.size() < 2 || (factor[0] != 'X' && factor[0] != 'x'))
      throw ParseError("bad monomial factor '" + std::string(factor) + "'");
    auto caret = factor.find('^');
    int idx = parse_int(factor.substr(1, caret == std::string_view::npos ? std::string_view::npos
                                                                         : caret - 1),
                        text);
    int pw = caret == std::string_view::npos ? 1 : parse_int(factor.substr(caret + 1), text);
    if (idx < 0 || static_cast<std::size_t>(idx) >= nvars)
      throw ParseError("variable X" + std::to_string(idx) + " out of range in " +
                       std::string(text));
    if (pw < 0) throw ParseError("negative exponent in " + std::string(text));
    e[idx] += pw;
    if (star == std::string_view::npos) break;
    s.remove_prefix(star + 1);
  }
  return Monomial(std::move(e));
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, int degree) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  std::vector<int> e(nvars, 0);
  // Enumerate compositions of `degree` into nvars parts.
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == nvars) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (int v = left; v >= 0; --v) {
      e[i] = v;
      rec(i + 1, left - v);
    }
  };
  if (degree >= 0) rec(0, degree);
  return out;
}

long long binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (long long i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > static_cast<__int128>(std::numeric_limits<long long>::max()))
      throw BudgetExceeded("binomial coefficient overflow");
  }
  return static_cast<long long>(r);
}

}  // namespace gstrata
