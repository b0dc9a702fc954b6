#pragma once

#include <memory>
#include <optional>
#include <string>

#include "gstrata/charts.hpp"
#include "gstrata/embedding.hpp"
#include "gstrata/hilbert.hpp"
#include "gstrata/io.hpp"

namespace gstrata {

struct AnalysisOptions {
  /// Degree to truncate at; defaults to the Gotzmann number of the Hilbert
  /// polynomial. The coefficient matrix is only built in the Gotzmann degree.
  std::optional<int> degree;
  bool matrix_path = true;
  EmbeddingOptions embedding;
  ComponentOptions components;
  HilbertOptions hilbert;
};

struct MatrixSummary {
  std::size_t rows = 0, cols = 0, t = 0, t1 = 0;
  std::size_t r_generators = 0, max_terms = 0;
  std::size_t linear_rank = 0;
  std::size_t ed = 0;
  std::vector<Var> surviving;
  /// evaluate_ideal on the R entries with the same eliminable split.
  EvaluationReport check;
  /// Same C'' and the same affine-space verdict as the family path.
  bool agrees = false;
};

/// Full chart workflow for one monomial ideal: truncate, build and reduce the
/// coefficient matrix, minimal embedding of the stratum, component split.
struct AnalysisReport {
  MonomialIdeal input, ideal;
  std::shared_ptr<const TermOrder> order;
  UniPoly hilbert_polynomial;
  long long gotzmann = 0;
  int degree = 0;
  GenericFamily family;
  std::optional<MatrixSummary> matrix;
  MinimalEmbedding embedding;
  std::optional<ComponentReport> components;
};

AnalysisReport analyze(const MonomialIdeal& j, const TermOrder& ord, const AnalysisOptions& opts = {});

json analysis_to_json(const AnalysisReport& rep);
std::string analysis_to_markdown(const AnalysisReport& rep);

}  // namespace gstrata
