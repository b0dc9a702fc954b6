#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gstrata/embedding.hpp"
#include "gstrata/groebner.hpp"
#include "gstrata/hilbert.hpp"
#include "gstrata/stratum.hpp"

namespace gstrata {

using CMatrix = std::vector<std::vector<CPoly>>;
using QMatrix = std::vector<std::vector<Rational>>;

/// Stratum: F_i with tails below X^{gamma_i}. Chart: G_i with every degree-r
/// monomial outside j in the tail (the affine chart of the Grassmannian).
enum class ChartMode { Stratum, Chart };

std::string to_string(ChartMode m);
ChartMode parse_chart_mode(const std::string& s);

/// Coefficient variables of a chart. The first `stratum_vars` variables are
/// exactly the variables of the stratum family (same indices, same names);
/// the remaining ones are the coefficients of complement monomials above the
/// respective leading monomial, numbered after the tail of their generator.
struct ChartVariables {
  GenericFamily family;
  StratumVars vars;
  std::size_t stratum_vars = 0;
  /// tails[i]: tail monomials of G_i (descending), var_of[i][k] their variables.
  std::vector<std::vector<Monomial>> tails;
  std::vector<std::vector<Var>> var_of;
  std::vector<Var> extra() const;
};

ChartVariables chart_variables(const MonomialIdeal& j, const TermOrder& ord, ChartMode mode);

struct MatrixOptions {
  /// Require r to be the Gotzmann number of the Hilbert polynomial of j.
  /// Switching this off allows small smoke tests with r forced to the
  /// generator degree.
  bool check_gotzmann = true;
};

/// Rows X_h F_i (h = n..0 for each generator i), columns the degree r+1
/// monomials in descending order.
struct CoeffMatrix {
  ChartMode mode = ChartMode::Stratum;
  ChartVariables chart;
  int r = 0;
  std::size_t t = 0, M = 0, M1 = 0, t1 = 0;
  std::vector<Monomial> columns;
  struct RowLabel {
    std::size_t x = 0;          ///< multiplier X_x
    std::size_t generator = 0;  ///< 0-based, descending generator order
  };
  std::vector<RowLabel> row_labels;
  CMatrix entries;

  std::size_t rows() const { return entries.size(); }
  std::size_t cols() const { return columns.size(); }
  const StratumVars& vars() const { return chart.vars; }
};

CoeffMatrix build_matrix(const MonomialIdeal& j, const TermOrder& ord, ChartMode mode,
                         const MatrixOptions& opts = {});

/// The two passes of block reduction. After the first pass the rows outside
/// the pivot set are S-polynomials: (D E / S L). The second pass clears S with
/// the pivot rows: (D E / 0 R).
struct BlockForm {
  std::vector<std::size_t> pivot_rows, other_rows;
  std::vector<std::size_t> ideal_cols, complement_cols;
  CMatrix D, E, S, L, R;

  /// Nonzero entries of R, normalized and deduplicated.
  std::vector<CPoly> h_generators() const;
  /// Nonzero entries of L (linear forms).
  std::vector<CPoly> linear_part() const;
};

/// Throws PreconditionError when fewer than t1 pivot rows exist or the pivot
/// block is not unitriangular (possible in Chart mode; use minors_ideal).
BlockForm block_reduce(const CoeffMatrix& mx);

struct MinorsOptions {
  std::size_t max_minors = 200'000;
};

/// All size x size minors (fraction-free elimination per minor).
CIdeal minors_ideal(const CMatrix& m, std::size_t size, const MinorsOptions& opts = {});
CIdeal minors_ideal(const CoeffMatrix& mx, const MinorsOptions& opts = {});

/// Compares the descending generator lists lexicographically under ord.
std::strong_ordering plucker_compare(const MonomialIdeal& a, const MonomialIdeal& b, const TermOrder& ord);

/// h(j) Q[Cbar] + (Cbar \ C) over the chart variables.
struct LocallyClosed {
  ChartVariables chart;
  std::vector<CPoly> stratum_ideal;
  CIdeal ideal;
};

LocallyClosed locally_closed_embedding(const MonomialIdeal& j, const TermOrder& ord, const MatrixOptions& opts = {});

/// Specializes every entry at `point` (one value per variable).
QMatrix specialize(const CMatrix& m, const std::vector<Rational>& point);
std::size_t rational_rank(QMatrix m);

struct ComponentPart {
  std::vector<CPoly> ideal;  ///< reduced Groebner basis in the lambda order
  int dimension = 0;
  bool is_affine_space = false;
  std::size_t embedding_dimension = 0;
};

struct ComponentReport {
  std::size_t ambient = 0;
  std::optional<CPoly> common_factor;
  std::vector<ComponentPart> parts;
  std::optional<int> intersection_dimension;
  /// Unset when no point of the intersection could be sampled.
  std::optional<bool> transversal;
  bool dimension_additive = false;
  int jacobian_rank = -1;
  std::vector<std::pair<Var, Rational>> sample_point;
  std::string rule;
};

struct ComponentOptions {
  GBOptions gb;
  std::uint64_t seed = 1;
  unsigned value_bits = 16;
  std::size_t max_samples = 50;
};

/// Splits V(me.ideal) along a common linear factor K of all generators into
/// (K) and (h : K) and checks that the two parts meet transversally:
/// dim(I1 + I2) = dim I1 + dim I2 - ambient, and the Jacobian of a generating
/// set of I1 + I2 has rank ambient - dim(I1 + I2) at a sampled rational point
/// of V(I1 + I2) away from the origin. K is searched among the variables only,
/// and only when the common monomial content of the generators is that one
/// variable.
ComponentReport component_analysis(const MinimalEmbedding& me, const StratumVars& vars,
                                   const ComponentOptions& opts = {});

/// Minimal embedding of a lambda-homogeneous ideal whose generators only use
/// `ambient`.
MinimalEmbedding embed_ideal(const std::vector<CPoly>& gens, const std::vector<Var>& ambient, const StratumVars& vars,
                             const EmbeddingOptions& opts = {});

}  // namespace gstrata
