#include "gstrata/analysis.hpp"

#include <algorithm>
#include <sstream>

#include "gstrata/errors.hpp"

namespace gstrata {

AnalysisReport analyze(const MonomialIdeal& j, const TermOrder& ord, const AnalysisOptions& opts) {
  if (j.nvars() != ord.nvars()) throw PreconditionError("ideal and order have different numbers of variables");
  if (j.is_zero() || j.is_unit()) throw PreconditionError("analyze needs a proper nonzero monomial ideal");
  AnalysisReport rep;
  rep.input = j;
  rep.order = std::make_shared<const TermOrder>(ord);
  rep.hilbert_polynomial = hilbert_polynomial(j, opts.hilbert).polynomial;
  rep.gotzmann = gotzmann_number(rep.hilbert_polynomial);
  rep.degree = opts.degree ? *opts.degree : static_cast<int>(rep.gotzmann);
  if (rep.degree < 1) throw PreconditionError("truncation degree must be positive");
  rep.ideal = j.truncate(rep.degree);
  rep.family = generic_generators(rep.ideal, ord, tails(rep.ideal, ord, TailMode::Homogeneous));

  rep.embedding = embed_or_evaluate(rep.family, opts.embedding);

  if (opts.matrix_path && rep.degree == rep.gotzmann) {
    CoeffMatrix mx = build_matrix(rep.ideal, ord, ChartMode::Stratum);
    BlockForm bf = block_reduce(mx);
    std::vector<CPoly> h = bf.h_generators();
    MatrixSummary ms;
    ms.rows = mx.rows();
    ms.cols = mx.cols();
    ms.t = mx.t;
    ms.t1 = mx.t1;
    ms.r_generators = h.size();
    for (const auto& p : h) ms.max_terms = std::max(ms.max_terms, p.size());
    std::vector<CPoly> lin;
    for (const auto& p : h)
      if (auto l = p.linear_part(); !l.is_zero()) lin.push_back(std::move(l));
    ms.linear_rank = linear_rank(lin);
    EmbeddingSplit split = eliminable_split(lin, mx.vars().size());
    ms.ed = split.ed();
    ms.surviving = split.surviving;
    ms.check = evaluate_ideal(h, split, mx.vars(), opts.embedding);
    ms.agrees = ms.surviving == rep.embedding.surviving && ms.check.vanishes == rep.embedding.is_affine_space;
    rep.matrix = std::move(ms);
  }

  if (rep.embedding.ideal_known || rep.embedding.is_affine_space)
    rep.components = component_analysis(rep.embedding, rep.family.vars, opts.components);
  return rep;
}

json analysis_to_json(const AnalysisReport& rep) {
  const auto& vars = rep.family.vars;
  json out;
  out["input"] = ideal_to_json(rep.input);
  out["order"] = order_to_json(*rep.order);
  out["hilbertPolynomial"] = rep.hilbert_polynomial.to_string();
  out["gotzmann"] = rep.gotzmann;
  out["degree"] = rep.degree;
  out["ideal"] = ideal_to_json(rep.ideal);
  out["variables"] = vars.size();
  if (rep.matrix) {
    const auto& m = *rep.matrix;
    json s = json::array();
    for (Var v : m.surviving) s.push_back(vars.name(v));
    out["matrix"] = {{"rows", m.rows},
                     {"cols", m.cols},
                     {"t", m.t},
                     {"t1", m.t1},
                     {"rGenerators", m.r_generators},
                     {"maxTerms", m.max_terms},
                     {"linearRank", m.linear_rank},
                     {"ed", m.ed},
                     {"surviving", s},
                     {"evaluationVanishes", m.check.vanishes},
                     {"evaluationErrorBound", m.check.error_bound},
                     {"degreeBound", m.check.degree_bound},
                     {"agreesWithFamilyPath", m.agrees}};
  } else {
    out["matrix"] = nullptr;
  }
  out["embedding"] = embedding_to_json(rep.embedding, vars);
  out["ed"] = rep.embedding.ed;
  out["isAffineSpace"] = rep.embedding.is_affine_space;
  out["components"] = rep.components ? component_report_to_json(*rep.components, vars) : json(nullptr);
  return out;
}

std::string analysis_to_markdown(const AnalysisReport& rep) {
  const auto& vars = rep.family.vars;
  const auto& me = rep.embedding;
  std::ostringstream md;
  md << "# Stratum analysis\n\n";
  md << "| quantity | value |\n|---|---|\n";
  md << "| input ideal | `" << rep.input.to_string() << "` |\n";
  md << "| term order | " << rep.order->name() << " |\n";
  md << "| Hilbert polynomial | " << rep.hilbert_polynomial.to_string() << " |\n";
  md << "| Gotzmann number | " << rep.gotzmann << " |\n";
  md << "| truncation degree | " << rep.degree << " |\n";
  md << "| generators after truncation | " << rep.ideal.size() << " |\n";
  md << "| C variables | " << vars.size() << " |\n";
  md << "| embedding dimension | " << me.ed << " |\n";
  md << "| dimension | " << me.dimension << " |\n";
  md << "| affine space | " << (me.is_affine_space ? "yes" : "no") << " |\n";
  md << "| certificate | " << me.certificate;
  if (me.certificate == "evaluation") md << " (error bound " << me.error_bound << ")";
  md << " |\n";
  if (me.ideal_known) md << "| generators of the embedded ideal | " << me.ideal.size() << " |\n";

  if (rep.matrix) {
    const auto& m = *rep.matrix;
    md << "\n## Coefficient matrix\n\n";
    md << "- " << m.rows << " x " << m.cols << ", t = " << m.t << ", t1 = " << m.t1 << "\n";
    md << "- block reduction: " << m.r_generators << " nonzero R entries, at most " << m.max_terms << " terms\n";
    md << "- rank of the linear part " << m.linear_rank << ", embedding dimension " << m.ed << "\n";
    md << "- evaluation of the R entries: " << (m.check.vanishes ? "vanishes" : "does not vanish")
       << " (degree bound " << m.check.degree_bound << ", error bound " << m.check.error_bound << ")\n";
    md << "- agrees with the S-polynomial path: " << (m.agrees ? "yes" : "no") << "\n";
  }

  if (rep.components) {
    const auto& c = *rep.components;
    md << "\n## Components\n\n";
    md << "Ambient space of dimension " << c.ambient << ".";
    if (c.common_factor) md << " Common factor `" << c.common_factor->to_string(vars.namer()) << "`.";
    md << "\n\n| part | dimension | affine space | embedding dimension |\n|---|---|---|---|\n";
    for (std::size_t k = 0; k < c.parts.size(); ++k)
      md << "| " << k + 1 << " | " << c.parts[k].dimension << " | " << (c.parts[k].is_affine_space ? "yes" : "no")
         << " | " << c.parts[k].embedding_dimension << " |\n";
    if (c.intersection_dimension) {
      md << "\nIntersection dimension " << *c.intersection_dimension << ", Jacobian rank " << c.jacobian_rank
         << ", transversal: ";
      md << (c.transversal ? (*c.transversal ? "yes" : "no") : "undetermined") << ".\n";
      md << "\nRule: " << c.rule << ".\n";
    }
  }
  return md.str();
}

}  // namespace gstrata
