#pragma once

#include <json.hpp>

#include "dirac/characters.hpp"
#include "dirac/elliptic.hpp"
#include "dirac/exact_matrix.hpp"
#include "dirac/fredholm.hpp"
#include "dirac/lab.hpp"
#include "dirac/root_datum.hpp"

namespace dirac {

using Json = nlohmann::json;

Json coords_to_json(const Coords& c);
Coords coords_from_json(const Json& j);

// Canonical form: list of {weight, coeff} sorted lexicographically.
Json virtual_character_to_json(const VirtualCharacter& v);
VirtualCharacter virtual_character_from_json(const Json& j);

Json root_datum_to_json(const RootDatum& d);
// Accepts {"preset": name} or {rank, simple_roots, gram, compact_flags}.
RootDatum root_datum_from_json(const Json& j);
RootDatum load_root_datum(const std::string& path);

Json exact_matrix_to_json(const ExactMatrix& m);
ExactMatrix exact_matrix_from_json(const Json& j);

Json module_to_json(const MatrixHCModule& m);
MatrixHCModule module_from_json(const Json& j);
MatrixHCModule load_module(const std::string& path);

Json dirac_vs_elliptic_to_json(const DiracVsEllipticReport& rep, const RootDatum& datum);

}  // namespace dirac
