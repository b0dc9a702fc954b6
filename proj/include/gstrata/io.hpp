#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "json.hpp"

#include "gstrata/charts.hpp"
#include "gstrata/embedding.hpp"
#include "gstrata/monomial_ideal.hpp"
#include "gstrata/stratum.hpp"
#include "gstrata/term_order.hpp"

namespace gstrata {

using json = nlohmann::json;

/// {"vars": 4, "gens": ["X3^2", "X3*X2", "X2^3"]}
json ideal_to_json(const MonomialIdeal& j);
MonomialIdeal ideal_from_json(const json& v);

/// {"kind": "lex"}, {"kind": "degrevlex"} or {"kind": "weight", "rows": [[...], ...]}
/// with rows listed X_n first. A bare string "lex" / "degrevlex" is accepted.
json order_to_json(const TermOrder& ord);
TermOrder order_from_json(const json& v, std::size_t nvars);

/// Command-line order syntax: lex, degrevlex, segment:15,5,2,1 (the 1 / w /
/// unit-row matrix), weight:1,1,1,1;3,2,1,1;... or inline JSON.
TermOrder parse_order_spec(const std::string& spec, std::size_t nvars);

/// Parses the CPoly text form ("2*c1_1*c9_3^2 - 3/4*c5_1 + 1") with `lookup`
/// resolving variable names.
CPoly parse_cpoly(std::string_view text, const std::function<std::optional<Var>(const std::string&)>& lookup);

/// Name -> variable table for fast parsing.
std::unordered_map<std::string, Var> name_table(const StratumVars& vars);

json cpoly_to_json(const CPoly& p, const StratumVars& vars);

/// {ideal, order, tailMode, tails, variables, lambdaDegrees, hGenerators,
///  linearPart, trace}
json stratum_to_json(const StratumResult& res);
StratumResult stratum_from_json(const json& v);

/// {ed, dimension, isAffineSpace, minimalIdeal, eliminated, surviving,
///  certificate, errorBound, idealKnown}
json embedding_to_json(const MinimalEmbedding& me, const StratumVars& vars);

json component_report_to_json(const ComponentReport& rep, const StratumVars& vars);

/// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_file(const std::string& path);
json read_json_file(const std::string& path);

}  // namespace gstrata
