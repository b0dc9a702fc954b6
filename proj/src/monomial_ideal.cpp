#include "gstrata/monomial_ideal.hpp"

#include <algorithm>
#include <deque>

#include "gstrata/errors.hpp"

namespace gstrata {

namespace {

const TermOrder& canonical_order(std::size_t nvars) {
  thread_local std::deque<TermOrder> cache;
  for (const auto& o : cache)
    if (o.nvars() == nvars) return o;
  cache.push_back(TermOrder::degrevlex(nvars));
  return cache.back();
}

}  // namespace

MonomialIdeal::MonomialIdeal(std::size_t nvars, std::vector<Monomial> gens) : nvars_(nvars) {
  for (const auto& g : gens)
    if (g.nvars() != nvars) throw PreconditionError("generator " + g.to_string() + " has wrong variable count");
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a < b;
  });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (auto& g : gens) {
    bool redundant = false;
    for (const auto& h : gens_)
      if (h.divides(g)) {
        redundant = true;
        break;
      }
    if (!redundant) gens_.push_back(std::move(g));
  }
  const TermOrder& ord = canonical_order(nvars_);
  sort_descending(gens_, ord);
}

MonomialIdeal MonomialIdeal::unit(std::size_t nvars) { return MonomialIdeal(nvars, {Monomial::one(nvars)}); }

std::vector<Monomial> MonomialIdeal::sorted_generators(const TermOrder& ord) const {
  std::vector<Monomial> g = gens_;
  sort_descending(g, ord);
  return g;
}

bool MonomialIdeal::is_unit() const { return gens_.size() == 1 && gens_[0].is_one(); }

bool MonomialIdeal::contains(const Monomial& m) const {
  for (const auto& g : gens_)
    if (g.divides(m)) return true;
  return false;
}

int MonomialIdeal::max_generator_degree() const {
  int d = 0;
  for (const auto& g : gens_) d = std::max(d, g.degree());
  return d;
}

int MonomialIdeal::min_generator_degree() const {
  if (gens_.empty()) return 0;
  int d = gens_[0].degree();
  for (const auto& g : gens_) d = std::min(d, g.degree());
  return d;
}

bool MonomialIdeal::generated_in_degree(int d) const {
  return std::all_of(gens_.begin(), gens_.end(), [d](const Monomial& g) { return g.degree() == d; });
}

std::vector<Monomial> MonomialIdeal::degree_part(int d) const {
  std::vector<Monomial> out;
  for (auto& m : monomials_of_degree(nvars_, d))
    if (contains(m)) out.push_back(std::move(m));
  sort_descending(out, canonical_order(nvars_));
  return out;
}

std::vector<Monomial> MonomialIdeal::complement(int d) const {
  std::vector<Monomial> out;
  for (auto& m : monomials_of_degree(nvars_, d))
    if (!contains(m)) out.push_back(std::move(m));
  sort_descending(out, canonical_order(nvars_));
  return out;
}

MonomialIdeal MonomialIdeal::colon(const Monomial& m) const {
  std::vector<Monomial> out;
  for (const auto& g : gens_) {
    std::vector<int> e(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) e[i] = std::max(0, g[i] - m[i]);
    out.emplace_back(std::move(e));
  }
  return MonomialIdeal(nvars_, std::move(out));
}

MonomialIdeal MonomialIdeal::intersect(const MonomialIdeal& other) const {
  std::vector<Monomial> out;
  for (const auto& a : gens_)
    for (const auto& b : other.gens_) out.push_back(lcm_and_cofactors(a, b).lcm);
  return MonomialIdeal(nvars_, std::move(out));
}

MonomialIdeal MonomialIdeal::operator+(const MonomialIdeal& other) const {
  std::vector<Monomial> all = gens_;
  all.insert(all.end(), other.gens_.begin(), other.gens_.end());
  return MonomialIdeal(nvars_, std::move(all));
}

MonomialIdeal MonomialIdeal::saturate() const {
  if (is_zero() || nvars_ == 0) return *this;
  MonomialIdeal cur = *this;
  while (true) {
    MonomialIdeal next = cur.colon(Monomial::variable(nvars_, 0));
    for (std::size_t i = 1; i < nvars_; ++i) next = next.intersect(cur.colon(Monomial::variable(nvars_, i)));
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

MonomialIdeal MonomialIdeal::truncate(int m) const {
  std::vector<Monomial> out;
  for (const auto& g : gens_) {
    if (g.degree() >= m) {
      out.push_back(g);
      continue;
    }
    for (const auto& c : monomials_of_degree(nvars_, m - g.degree())) out.push_back(g * c);
  }
  return MonomialIdeal(nvars_, std::move(out));
}

std::string MonomialIdeal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].to_string();
  return s + ")";
}

}  // namespace gstrata
