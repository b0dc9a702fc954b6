// gstrata command-line front end. Every subcommand writes JSON to --out (or
// stdout); analyze can also write a Markdown summary with --md.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "gstrata/analysis.hpp"
#include "gstrata/borel.hpp"
#include "gstrata/errors.hpp"
#include "gstrata/io.hpp"

using namespace gstrata;

namespace {

enum Exit { kOk = 0, kOther = 1, kParse = 2, kPrecondition = 3, kBudget = 4, kInternal = 5 };

struct Budget {
  std::size_t max_terms = 50'000'000;
  std::size_t max_minors = 200'000;
  std::size_t max_gb_steps = 2'000'000;
  int max_window = 400;
};

// GSTRATA_BUDGET="terms=1e6,minors=5000,gb-steps=100000,window=200"; the
// command-line flags take precedence.
void apply_env_budget(Budget& b) {
  const char* env = std::getenv("GSTRATA_BUDGET");
  if (!env) return;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("GSTRATA_BUDGET: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    double value = 0;
    try {
      value = std::stod(item.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw ParseError("GSTRATA_BUDGET: bad value in '" + item + "'");
    }
    if (value < 1) throw ParseError("GSTRATA_BUDGET: values must be positive");
    if (key == "terms") b.max_terms = static_cast<std::size_t>(value);
    else if (key == "minors") b.max_minors = static_cast<std::size_t>(value);
    else if (key == "gb-steps") b.max_gb_steps = static_cast<std::size_t>(value);
    else if (key == "window") b.max_window = static_cast<int>(value);
    else throw ParseError("GSTRATA_BUDGET: unknown key '" + key + "'");
  }
}

EmbeddingOptions embedding_options(const Budget& b, std::uint64_t seed) {
  EmbeddingOptions o;
  o.max_terms = b.max_terms;
  o.gb.max_steps = b.max_gb_steps;
  o.evaluation_seed = seed;
  return o;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

void emit_json(const json& v, const std::string& path) { emit(v.dump(2) + "\n", path); }

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw ParseError("bad integer '" + item + "'");
    } catch (const std::logic_error&) {
      throw ParseError("bad integer '" + item + "'");
    }
  }
  return out;
}

ReductionStrategy parse_strategy(const std::string& s) {
  if (s == "first") return ReductionStrategy::first();
  if (s == "last") return ReductionStrategy::last();
  if (s.rfind("random:", 0) == 0) {
    try {
      return ReductionStrategy::random(std::stoull(s.substr(7)));
    } catch (const std::logic_error&) {
    }
  }
  throw ParseError("unknown strategy '" + s + "' (first, last or random:SEED)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groebner strata of monomial ideals"};
  app.require_subcommand(1);

  Budget budget;
  std::string ideal_path, order_spec = "degrevlex", out_path, md_path;
  std::uint64_t seed = 1;

  auto add_budget = [&](CLI::App* c) {
    c->add_option("--max-terms", budget.max_terms, "term-product budget of the symbolic embedding");
    c->add_option("--max-minors", budget.max_minors, "largest number of minors computed");
    c->add_option("--max-gb-steps", budget.max_gb_steps, "S-pair reductions per Groebner basis");
    c->add_option("--max-window", budget.max_window, "largest Hilbert interpolation degree");
  };

  // stratum
  auto* st = app.add_subcommand("stratum", "h(j,T), its linear part and the S-pair trace");
  std::string tail_mode = "homogeneous", strategy = "first";
  st->add_option("--ideal", ideal_path, "ideal JSON")->required();
  st->add_option("--order", order_spec, "lex | degrevlex | segment:a,b,c,d | weight:rows | JSON");
  st->add_option("--tails", tail_mode, "homogeneous | full");
  st->add_option("--strategy", strategy, "first | last | random:SEED");
  st->add_option("--out", out_path);

  // embed
  auto* em = app.add_subcommand("embed", "minimal embedding of a stratum");
  std::string stratum_path;
  auto* em_stratum = em->add_option("--stratum", stratum_path, "stratum JSON written by `stratum`");
  auto* em_ideal = em->add_option("--ideal", ideal_path, "ideal JSON (computes the stratum directly)");
  em_stratum->excludes(em_ideal);
  em->add_option("--order", order_spec);
  em->add_option("--out", out_path);
  em->add_option("--seed", seed);
  add_budget(em);

  // hilb-chart
  auto* hc = app.add_subcommand("hilb-chart", "coefficient matrix of a Hilbert scheme chart");
  std::string chart_mode = "stratum";
  bool with_minors = false;
  std::optional<int> degree;
  hc->add_option("--ideal", ideal_path)->required();
  hc->add_option("--order", order_spec);
  hc->add_option("--mode", chart_mode, "stratum | chart");
  hc->add_option("--degree", degree, "truncation degree (default: Gotzmann number)");
  hc->add_flag("--minors", with_minors, "also compute the (t1+1)-minors");
  hc->add_option("--out", out_path);
  add_budget(hc);

  // analyze
  auto* an = app.add_subcommand("analyze", "matrix, embedding and component report");
  bool no_matrix = false;
  an->add_option("--ideal", ideal_path)->required();
  an->add_option("--order", order_spec);
  an->add_option("--degree", degree, "truncation degree (default: Gotzmann number)");
  an->add_flag("--no-matrix", no_matrix, "skip the coefficient matrix cross-check");
  an->add_option("--out", out_path, "JSON report");
  an->add_option("--md", md_path, "Markdown report");
  an->add_option("--seed", seed);
  add_budget(an);

  // segment-order
  auto* so = app.add_subcommand("segment-order", "weight vector making j_d a segment");
  int seg_degree = 0;
  std::string validate;
  long long max_sum = 120;
  so->add_option("--ideal", ideal_path)->required();
  so->add_option("--degree", seg_degree)->required();
  so->add_option("--validate", validate, "check this weight vector a_n,...,a_0");
  so->add_option("--max-sum", max_sum, "largest coordinate sum searched");
  so->add_option("--out", out_path);

  // gotzmann
  auto* gz = app.add_subcommand("gotzmann", "Gotzmann number of a Hilbert polynomial");
  std::string poly;
  auto* gz_poly = gz->add_option("--poly", poly, "integer polynomial in z, e.g. 4*z");
  auto* gz_ideal = gz->add_option("--ideal", ideal_path, "use the Hilbert polynomial of this ideal");
  gz_poly->excludes(gz_ideal);
  add_budget(gz);

  // lex
  auto* lx = app.add_subcommand("lex", "lexsegment ideal L(a_n,...,a_1)");
  std::string lex_a;
  std::optional<int> lex_degree;
  lx->add_option("--a", lex_a, "a_n,...,a_1")->required();
  lx->add_option("--degree", lex_degree, "truncate in this degree");
  lx->add_option("--out", out_path);

  // truncate
  auto* tr = app.add_subcommand("truncate", "truncation j_{>=m}, optionally compared with j_{>=s}");
  int tr_degree = 0;
  std::optional<int> from;
  tr->add_option("--ideal", ideal_path)->required();
  tr->add_option("--degree", tr_degree, "m")->required();
  tr->add_option("--from", from, "s: check St(j_{>=s}) = St(j_{>=m})");
  tr->add_option("--order", order_spec);
  tr->add_option("--out", out_path);
  add_budget(tr);

  try {
    apply_env_budget(budget);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    HilbertOptions hopts;
    hopts.max_window_degree = budget.max_window;

    if (*st) {
      auto j = ideal_from_json(read_json_file(ideal_path));
      auto ord = parse_order_spec(order_spec, j.nvars());
      StratumOptions so_opts;
      so_opts.strategy = parse_strategy(strategy);
      auto res = stratum_ideal(j, tails(j, ord, parse_tail_mode(tail_mode)), ord, so_opts);
      emit_json(stratum_to_json(res), out_path);
    } else if (*em) {
      auto eo = embedding_options(budget, seed);
      if (!stratum_path.empty()) {
        auto res = stratum_from_json(read_json_file(stratum_path));
        const auto& vars = res.family.vars;
        auto split = eliminable_split(res.linear_polys(), vars.size());
        auto me = minimal_embedding(res.h_polys(), split, vars, eo);
        emit_json(embedding_to_json(me, vars), out_path);
      } else if (!ideal_path.empty()) {
        auto j = ideal_from_json(read_json_file(ideal_path));
        auto ord = parse_order_spec(order_spec, j.nvars());
        auto fam = generic_generators(j, ord, tails(j, ord, TailMode::Homogeneous));
        emit_json(embedding_to_json(embed_or_evaluate(fam, eo), fam.vars), out_path);
      } else {
        throw ParseError("embed needs --stratum or --ideal");
      }
    } else if (*hc) {
      auto j = ideal_from_json(read_json_file(ideal_path));
      auto ord = parse_order_spec(order_spec, j.nvars());
      auto p = hilbert_polynomial(j, hopts).polynomial;
      long long r = gotzmann_number(p);
      int d = degree ? *degree : static_cast<int>(r);
      if (d != r) throw PreconditionError("the chart matrix lives in the Gotzmann degree " + std::to_string(r));
      auto jt = j.truncate(d);
      auto mode = parse_chart_mode(chart_mode);
      auto mx = build_matrix(jt, ord, mode);
      const auto& vars = mx.vars();
      json out;
      out["ideal"] = ideal_to_json(jt);
      out["order"] = order_to_json(ord);
      out["mode"] = to_string(mode);
      out["hilbertPolynomial"] = p.to_string();
      out["r"] = mx.r;
      out["M"] = mx.M;
      out["t"] = mx.t;
      out["M1"] = mx.M1;
      out["t1"] = mx.t1;
      out["rows"] = mx.rows();
      out["cols"] = mx.cols();
      out["variables"] = vars.size();
      out["stratumVariables"] = mx.chart.stratum_vars;
      json extra = json::array();
      for (Var v : mx.chart.extra()) extra.push_back(vars.name(v));
      out["extraVariables"] = extra;
      try {
        auto bf = block_reduce(mx);
        auto h = bf.h_generators();
        std::vector<CPoly> lin;
        for (const auto& q : h)
          if (auto l = q.linear_part(); !l.is_zero()) lin.push_back(std::move(l));
        json hj = json::array();
        for (const auto& q : h) hj.push_back(q.to_string(vars.namer()));
        out["blockReduction"] = {{"rGenerators", h.size()},
                                 {"linearRank", linear_rank(lin)},
                                 {"ed", vars.size() - linear_rank(lin)},
                                 {"R", hj}};
      } catch (const PreconditionError& e) {
        out["blockReduction"] = {{"error", e.what()}};
      }
      if (with_minors) {
        MinorsOptions mo;
        mo.max_minors = budget.max_minors;
        auto minors = minors_ideal(mx, mo);
        json mj = json::array();
        for (const auto& q : minors.generators()) mj.push_back(q.to_string(vars.namer()));
        out["minors"] = mj;
      }
      emit_json(out, out_path);
    } else if (*an) {
      auto j = ideal_from_json(read_json_file(ideal_path));
      auto ord = parse_order_spec(order_spec, j.nvars());
      AnalysisOptions ao;
      ao.degree = degree;
      ao.matrix_path = !no_matrix;
      ao.embedding = embedding_options(budget, seed);
      ao.components.gb.max_steps = budget.max_gb_steps;
      ao.components.seed = seed;
      ao.hilbert = hopts;
      auto rep = analyze(j, ord, ao);
      emit_json(analysis_to_json(rep), out_path);
      if (!md_path.empty()) emit(analysis_to_markdown(rep), md_path);
    } else if (*so) {
      auto j = ideal_from_json(read_json_file(ideal_path));
      SegmentSearchOptions sopts;
      sopts.max_sum = max_sum;
      auto res = find_segment_order(j, seg_degree, sopts);
      json out;
      out["found"] = res.found;
      out["weight"] = res.weight;
      out["candidatesTried"] = res.candidates_tried;
      if (res.certificate)
        out["certificate"] = {res.certificate->first.to_string(), res.certificate->second.to_string()};
      if (!validate.empty()) {
        std::vector<long long> w;
        for (int a : parse_int_list(validate)) w.push_back(a);
        if (w.size() != j.nvars()) throw ParseError("--validate needs one entry per variable");
        auto ex = borel_extremes(j, seg_degree);
        bool adm = admissible_segment_weight(w);
        bool sep = weight_separates(ex, w);
        bool seg = adm && is_segment(j.truncate(seg_degree), seg_degree, TermOrder::segment_weight(w));
        out["validation"] = {{"weight", w}, {"admissible", adm}, {"separates", sep}, {"segment", seg}};
      }
      emit_json(out, out_path);
    } else if (*gz) {
      UniPoly p;
      if (!poly.empty()) p = UniPoly::parse(poly);
      else if (!ideal_path.empty()) p = hilbert_polynomial(ideal_from_json(read_json_file(ideal_path)), hopts).polynomial;
      else throw ParseError("gotzmann needs --poly or --ideal");
      std::cout << gotzmann_number(p) << "\n";
    } else if (*lx) {
      auto a = parse_int_list(lex_a);
      auto j = lexsegment_ideal(a);
      if (lex_degree) j = j.truncate(*lex_degree);
      emit_json(ideal_to_json(j), out_path);
    } else if (*tr) {
      auto j = ideal_from_json(read_json_file(ideal_path));
      if (!from) {
        emit_json(ideal_to_json(j.truncate(tr_degree)), out_path);
      } else {
        auto ord = parse_order_spec(order_spec, j.nvars());
        auto rep = truncation_isomorphism_check(j, *from, tr_degree, ord, embedding_options(budget, seed));
        emit_json({{"isomorphic", rep.isomorphic},
                   {"reason", rep.reason},
                   {"variablesS", rep.vars_s},
                   {"variablesM", rep.vars_m},
                   {"edS", rep.ed_s},
                   {"edM", rep.ed_m}},
                  out_path);
      }
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOk;
}
