#pragma once

#include <string>

#include <json.hpp>

#include "opmod/matrix.hpp"

namespace opmod {

// Wire format: {"rows":n,"cols":m,"re":[...],"im":[...]} row-major.
// Readers reject NaN/Inf and shape mismatches.

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

void save_matrix(const ComplexMatrix& m, const std::string& path);
ComplexMatrix load_matrix(const std::string& path);

} // namespace opmod
