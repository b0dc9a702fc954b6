#include "gstrata/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "gstrata/errors.hpp"

namespace gstrata {

namespace {

template <class T>
T get_field(const json& v, const char* key) {
  if (!v.is_object() || !v.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return v.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

// Bracket layout: X_n first.
json int_vector(const std::vector<int>& v) {
  json a = json::array();
  for (std::size_t k = v.size(); k-- > 0;) a.push_back(v[k]);
  return a;
}

std::vector<int> int_vector_from(const json& a, std::size_t n) {
  if (!a.is_array() || a.size() != n) throw ParseError("expected an integer array of length " + std::to_string(n));
  std::vector<int> v(n);
  for (std::size_t k = 0; k < n; ++k) v[n - 1 - k] = a[k].get<int>();
  return v;
}

std::vector<long long> parse_ll_list(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw ParseError("bad integer '" + item + "'");
    } catch (const std::logic_error&) {
      throw ParseError("bad integer '" + item + "'");
    }
  }
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

json poly_list(const std::vector<CPoly>& ps, const StratumVars& vars) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(p.to_string(vars.namer()));
  return a;
}

class CPolyParser {
 public:
  CPolyParser(std::string_view s, const std::function<std::optional<Var>(const std::string&)>& lookup)
      : lookup_(lookup) {
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) text_ += c;
  }

  CPoly parse() {
    if (text_.empty()) throw ParseError("empty polynomial");
    CPoly out;
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (text_[pos_] == '+' || text_[pos_] == '-') {
        sign = text_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      CPoly t = term();
      if (sign < 0) t = -t;
      out += t;
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial '" + text_ + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  bool at_end() const { return pos_ >= text_.size(); }

  std::string digits() {
    std::size_t b = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (b == pos_) fail("expected digits");
    return text_.substr(b, pos_ - b);
  }

  CPoly atom() {
    if (at_end()) fail("unexpected end");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      if (!at_end() && text_[pos_] == '/') {
        ++pos_;
        std::string den = digits();
        if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
        Rational q(num + "/" + den);
        q.canonicalize();
        return CPoly(q);
      }
      return CPoly(Rational(num));
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected '") + c + "'");
    std::size_t b = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    std::string name = text_.substr(b, pos_ - b);
    auto v = lookup_(name);
    if (!v) fail("unknown variable '" + name + "'");
    std::uint32_t e = 1;
    if (!at_end() && text_[pos_] == '^') {
      ++pos_;
      std::string d = digits();
      if (d.size() > 6) fail("exponent too large");
      e = static_cast<std::uint32_t>(std::stoul(d));
    }
    return CPoly::monomial(CMonomial::variable(*v, e));
  }

  CPoly term() {
    CPoly t = atom();
    while (!at_end() && text_[pos_] == '*') {
      ++pos_;
      t = t * atom();
    }
    return t;
  }

  std::string text_;
  std::size_t pos_ = 0;
  const std::function<std::optional<Var>(const std::string&)>& lookup_;
};

}  // namespace

json ideal_to_json(const MonomialIdeal& j) {
  json gens = json::array();
  for (const auto& g : j.sorted_generators(TermOrder::degrevlex(j.nvars()))) gens.push_back(g.to_string());
  return {{"vars", j.nvars()}, {"gens", gens}};
}

MonomialIdeal ideal_from_json(const json& v) {
  auto n = get_field<long long>(v, "vars");
  if (n < 1 || n > 64) throw ParseError("'vars' must be between 1 and 64");
  auto gens = get_field<std::vector<std::string>>(v, "gens");
  std::vector<Monomial> ms;
  for (const auto& g : gens) ms.push_back(parse_monomial(g, static_cast<std::size_t>(n)));
  return MonomialIdeal(static_cast<std::size_t>(n), std::move(ms));
}

json order_to_json(const TermOrder& ord) {
  switch (ord.kind()) {
    case TermOrder::Kind::Lex:
      return {{"kind", "lex"}};
    case TermOrder::Kind::DegRevLex:
      return {{"kind", "degrevlex"}};
    case TermOrder::Kind::Weight:
      return {{"kind", "weight"}, {"rows", ord.rows()}};
  }
  return {};
}

TermOrder order_from_json(const json& v, std::size_t nvars) {
  std::string kind = v.is_string() ? v.get<std::string>() : get_field<std::string>(v, "kind");
  if (kind == "lex") return TermOrder::lex(nvars);
  if (kind == "degrevlex") return TermOrder::degrevlex(nvars);
  if (kind == "weight") {
    auto rows = get_field<std::vector<std::vector<long long>>>(v, "rows");
    for (const auto& r : rows)
      if (r.size() != nvars) throw ParseError("weight row length differs from the number of variables");
    return TermOrder::weight(nvars, std::move(rows));
  }
  throw ParseError("unknown order kind '" + kind + "'");
}

TermOrder parse_order_spec(const std::string& spec, std::size_t nvars) {
  if (spec == "lex") return TermOrder::lex(nvars);
  if (spec == "degrevlex") return TermOrder::degrevlex(nvars);
  if (spec.rfind("segment:", 0) == 0) {
    auto w = parse_ll_list(spec.substr(8));
    if (w.size() != nvars) throw ParseError("segment weight length differs from the number of variables");
    return TermOrder::segment_weight(w);
  }
  if (spec.rfind("weight:", 0) == 0) {
    std::vector<std::vector<long long>> rows;
    std::stringstream ss(spec.substr(7));
    std::string row;
    while (std::getline(ss, row, ';')) rows.push_back(parse_ll_list(row));
    return order_from_json(json{{"kind", "weight"}, {"rows", rows}}, nvars);
  }
  if (!spec.empty() && spec.front() == '{') {
    json v;
    try {
      v = json::parse(spec);
    } catch (const json::exception& e) {
      throw ParseError(std::string("order JSON: ") + e.what());
    }
    return order_from_json(v, nvars);
  }
  return order_from_json(read_json_file(spec), nvars);
}

CPoly parse_cpoly(std::string_view text, const std::function<std::optional<Var>(const std::string&)>& lookup) {
  return CPolyParser(text, lookup).parse();
}

std::unordered_map<std::string, Var> name_table(const StratumVars& vars) {
  std::unordered_map<std::string, Var> t;
  for (Var v = 0; v < vars.size(); ++v) t.emplace(vars.name(v), v);
  return t;
}

json cpoly_to_json(const CPoly& p, const StratumVars& vars) { return p.to_string(vars.namer()); }

json stratum_to_json(const StratumResult& res) {
  const auto& fam = res.family;
  const auto& vars = fam.vars;
  json out;
  out["ideal"] = ideal_to_json(fam.ideal);
  out["order"] = order_to_json(*fam.order);
  out["tailMode"] = to_string(fam.tails.mode);
  json leading = json::array(), tails = json::array();
  for (std::size_t i = 0; i < fam.tails.leading.size(); ++i) {
    leading.push_back(fam.tails.leading[i].to_string());
    json t = json::array();
    for (const auto& m : fam.tails.tails[i]) t.push_back(m.to_string());
    tails.push_back(t);
  }
  out["leading"] = leading;
  out["tails"] = tails;

  json variables = json::array(), degrees = json::array();
  for (Var v = 0; v < vars.size(); ++v) {
    const auto& pv = vars[v];
    variables.push_back({{"name", vars.name(v)},
                         {"generator", pv.generator},
                         {"position", pv.position},
                         {"tail", pv.tail.to_string()}});
    degrees.push_back(int_vector(pv.lambda));
  }
  out["variables"] = variables;
  out["lambdaDegrees"] = degrees;

  json pairs = json::array();
  for (const auto& p : res.pairs)
    pairs.push_back({{"i", p.i + 1}, {"k", p.k + 1}, {"lcm", p.lcm.to_string()}});
  out["pairs"] = pairs;

  auto gen_list = [&](const std::vector<StratumGenerator>& gs, json& polys, json& trace, const char* kind) {
    for (std::size_t g = 0; g < gs.size(); ++g) {
      polys.push_back(gs[g].poly.to_string(vars.namer()));
      trace.push_back({{"kind", kind},
                       {"index", g},
                       {"pair", gs[g].pair},
                       {"xMonomial", gs[g].xmono.to_string()},
                       {"lambda", int_vector(gs[g].lambda)}});
    }
  };
  json h = json::array(), lin = json::array(), trace = json::array();
  gen_list(res.h, h, trace, "h");
  gen_list(res.linear, lin, trace, "linear");
  out["hGenerators"] = h;
  out["linearPart"] = lin;
  out["trace"] = trace;
  return out;
}

StratumResult stratum_from_json(const json& v) {
  MonomialIdeal j = ideal_from_json(get_field<json>(v, "ideal"));
  const std::size_t n = j.nvars();
  TermOrder ord = order_from_json(get_field<json>(v, "order"), n);
  TailMode mode = parse_tail_mode(get_field<std::string>(v, "tailMode"));
  std::vector<std::vector<Monomial>> lists;
  for (const auto& t : get_field<std::vector<std::vector<std::string>>>(v, "tails")) {
    lists.emplace_back();
    for (const auto& m : t) lists.back().push_back(parse_monomial(m, n));
  }
  TailSpec spec = custom_tails(j, ord, std::move(lists));
  spec.mode = mode;
  auto leading = get_field<std::vector<std::string>>(v, "leading");
  if (leading.size() != spec.leading.size()) throw ParseError("leading monomials do not match the ideal");
  for (std::size_t i = 0; i < leading.size(); ++i)
    if (parse_monomial(leading[i], n) != spec.leading[i]) throw ParseError("leading monomials do not match the ideal");

  StratumResult res;
  res.family = generic_generators(j, ord, spec);
  const auto& vars = res.family.vars;
  auto vlist = get_field<json>(v, "variables");
  auto degrees = get_field<json>(v, "lambdaDegrees");
  if (!vlist.is_array() || vlist.size() != vars.size() || degrees.size() != vars.size())
    throw ParseError("variable list does not match the tails");
  for (Var x = 0; x < vars.size(); ++x) {
    if (get_field<std::string>(vlist[x], "name") != vars.name(x)) throw ParseError("variable order mismatch");
    if (int_vector_from(degrees[x], n) != vars[x].lambda) throw ParseError("lambda-degree mismatch");
  }

  for (const auto& p : get_field<json>(v, "pairs")) {
    auto i = get_field<std::size_t>(p, "i"), k = get_field<std::size_t>(p, "k");
    if (i < 1 || k <= i || k > spec.leading.size()) throw ParseError("bad pair index");
    auto lc = lcm_and_cofactors(spec.leading[i - 1], spec.leading[k - 1]);
    res.pairs.push_back({i - 1, k - 1, lc.lcm, lc.left, lc.right});
  }

  auto table = name_table(vars);
  auto lookup = [&](const std::string& s) -> std::optional<Var> {
    auto it = table.find(s);
    if (it == table.end()) return std::nullopt;
    return it->second;
  };
  auto polys_h = get_field<std::vector<std::string>>(v, "hGenerators");
  auto polys_l = get_field<std::vector<std::string>>(v, "linearPart");
  res.h.resize(polys_h.size());
  res.linear.resize(polys_l.size());
  for (std::size_t g = 0; g < polys_h.size(); ++g) res.h[g].poly = parse_cpoly(polys_h[g], lookup);
  for (std::size_t g = 0; g < polys_l.size(); ++g) res.linear[g].poly = parse_cpoly(polys_l[g], lookup);
  for (const auto& t : get_field<json>(v, "trace")) {
    auto kind = get_field<std::string>(t, "kind");
    auto idx = get_field<std::size_t>(t, "index");
    auto& target = kind == "h" ? res.h : kind == "linear" ? res.linear : throw ParseError("bad trace kind");
    if (idx >= target.size()) throw ParseError("trace index out of range");
    auto& g = target[idx];
    g.pair = get_field<std::size_t>(t, "pair");
    if (g.pair >= res.pairs.size()) throw ParseError("trace pair out of range");
    g.xmono = parse_monomial(get_field<std::string>(t, "xMonomial"), n);
    g.lambda = int_vector_from(get_field<json>(t, "lambda"), n);
  }
  for (const auto* gs : {&res.h, &res.linear})
    for (const auto& g : *gs) {
      auto lam = vars.lambda_degree(g.poly);
      if (!lam || *lam != g.lambda) throw ParseError("generator is not lambda-homogeneous of its traced degree");
    }
  return res;
}

json embedding_to_json(const MinimalEmbedding& me, const StratumVars& vars) {
  json out;
  out["ed"] = me.ed;
  out["dimension"] = me.dimension;
  out["isAffineSpace"] = me.is_affine_space;
  out["idealKnown"] = me.ideal_known;
  out["certificate"] = me.certificate;
  out["errorBound"] = me.error_bound;
  out["minimalIdeal"] = poly_list(me.ideal_polys(), vars);
  json surv = json::array();
  for (Var v : me.surviving) surv.push_back(vars.name(v));
  out["surviving"] = surv;
  json elim = json::object();
  for (const auto& [v, p] : me.eliminated) elim[vars.name(v)] = p.to_string(vars.namer());
  out["eliminated"] = elim;
  return out;
}

json component_report_to_json(const ComponentReport& rep, const StratumVars& vars) {
  json out;
  out["ambient"] = rep.ambient;
  out["commonFactor"] = rep.common_factor ? json(rep.common_factor->to_string(vars.namer())) : json(nullptr);
  json parts = json::array();
  for (const auto& p : rep.parts)
    parts.push_back({{"ideal", poly_list(p.ideal, vars)},
                     {"dimension", p.dimension},
                     {"isAffineSpace", p.is_affine_space},
                     {"embeddingDimension", p.embedding_dimension}});
  out["parts"] = parts;
  out["intersectionDimension"] = rep.intersection_dimension ? json(*rep.intersection_dimension) : json(nullptr);
  out["transversal"] = rep.transversal ? json(*rep.transversal) : json(nullptr);
  out["dimensionAdditive"] = rep.dimension_additive;
  out["jacobianRank"] = rep.jacobian_rank;
  json pt = json::object();
  for (const auto& [v, q] : rep.sample_point) pt[vars.name(v)] = q.get_str();
  out["samplePoint"] = pt;
  out["rule"] = rep.rule;
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) {
  std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

}  // namespace gstrata
