#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rees/complex.hpp"
#include "rees/oracle.hpp"
#include "rees/polyring.hpp"
#include "rees/presentations.hpp"
#include "rees/sagbi.hpp"
#include "rees/sorting.hpp"

namespace rees {

// Terms joined by + and -, each an optional coefficient ("3", "3/2") times
// whitespace-separated factors:
//   x11  x{10,2}            matrix entry (row, column)
//   T145 T_{145} T{1,4,5}   facet variable
//   t                       Rees variable
//   [1,4,5] [145]           maximal minor on those columns
// A factor may carry "^k". "*" is accepted between factors.
Polynomial parse_polynomial(const std::string& text);
// A single term with coefficient 1.
Monomial parse_monomial(const std::string& text);

// {"m": 2, "n": 6, "facets": [[1,2], ...]} or {"m": 2, "n": 6, "cliques": [[1,2,3], ...]};
// "n" defaults to the largest vertex. Duplicate facets and unknown keys warn.
SimplicialComplex parse_complex(const std::string& json_text, std::vector<std::string>* warnings = nullptr);
SimplicialComplex load_complex(const std::string& path, std::vector<std::string>* warnings = nullptr);
nlohmann::json complex_to_json(const SimplicialComplex& delta);

// Canonical text: terms in descending order under `order`.
std::string poly_text(const Polynomial& p, const MonomialOrder& order = MonomialOrder::lex_x_prime());

nlohmann::json to_json(const GeneratorSet& gs, int m);
// Reads the "target" and polynomial texts back from to_json(GeneratorSet).
GeneratorSet generator_set_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SagbiReport& rep);
nlohmann::json to_json(const Classification& cl);
nlohmann::json to_json(const EqualityReport& rep, const MonomialOrder& order);
nlohmann::json to_json(const IdealBasis& basis);

Target parse_target(const std::string& name);

}  // namespace rees
