#pragma once

#include "grstrata/grassmann.hpp"

#include <json.hpp>

namespace grstrata {

using Json = nlohmann::ordered_json;

/// {"rows": R, "cols": C, "entries": [[re_num, re_den, im_num, im_den], ...]},
/// components as decimal strings, row-major.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"n": N, "k": K, "basis": matrix}. Readers canonicalize and reject rank-deficient bases.
Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j);

/// {"h": H, "k": K, "n": N, "points": [subspace, ...]}.
Json configuration_to_json(const Configuration& c);
Configuration configuration_from_json(const Json& j);

}  // namespace grstrata
