#include "gstrata/param_poly.hpp"

#include "gstrata/errors.hpp"

namespace gstrata {

namespace {
const CPoly kZero;
}

ParamPoly::ParamPoly(std::shared_ptr<const TermOrder> ord)
    : ord_(std::move(ord)), terms_(Descending{ord_.get()}) {
  GSTRATA_ASSERT(ord_ != nullptr, "ParamPoly needs an order");
}

const Monomial& ParamPoly::leading_monomial() const {
  if (terms_.empty()) throw PreconditionError("leading monomial of the zero polynomial");
  return terms_.begin()->first;
}

const CPoly& ParamPoly::leading_coefficient() const {
  if (terms_.empty()) throw PreconditionError("leading coefficient of the zero polynomial");
  return terms_.begin()->second;
}

const CPoly& ParamPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? kZero : it->second;
}

void ParamPoly::add(const Monomial& m, const CPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void ParamPoly::sub_multiple(const CPoly& c, const Monomial& shift, const ParamPoly& f) {
  if (c.is_zero()) return;
  for (const auto& [m, coef] : f.terms_) add(m * shift, -(c * coef));
}

ParamPoly ParamPoly::times(const Monomial& shift) const {
  ParamPoly r(ord_);
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m * shift, c);
  return r;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

std::vector<CPoly> ParamPoly::x_coefficients() const {
  std::vector<CPoly> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) out.push_back(c);
  return out;
}

std::map<Monomial, Rational> ParamPoly::specialize(const std::function<Rational(Var)>& value) const {
  std::map<Monomial, Rational> out;
  for (const auto& [m, c] : terms_) {
    Rational v = c.evaluate(value);
    if (v != 0) out.emplace(m, v);
  }
  return out;
}

std::string ParamPoly::to_string(const std::function<std::string(Var)>& name) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string cs = c.to_string(name);
    if (m.is_one()) {
      out += c.size() > 1 ? "(" + cs + ")" : cs;
    } else if (c == CPoly(1)) {
      out += m.to_string();
    } else {
      out += (c.size() > 1 ? "(" + cs + ")" : cs) + "*" + m.to_string();
    }
  }
  return out;
}

bool operator==(const ParamPoly& a, const ParamPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib)
    if (!(ia->first == ib->first) || !(ia->second == ib->second)) return false;
  return true;
}

std::strong_ordering MixedOrder::compare(const MixedMonomial& a, const MixedMonomial& b) const {
  auto c = x_.compare(a.x, b.x);
  if (c != 0) return c;
  return c_.compare(a.c, b.c);
}

MixedOrder elimination_order(const TermOrder& x, const COrder& c) { return MixedOrder(x, c); }

}  // namespace gstrata
