#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "minusorder/dense_matrix.hpp"

namespace minusorder {

/// Text format: first line "rows cols", then `rows` lines of whitespace
/// separated decimal numbers. Ragged rows and non-finite values are rejected.
DenseMatrix read_matrix_text(std::istream& in, const std::string& source_name);

/// JSON format: {"rows": [[...], [...], ...]}.
DenseMatrix matrix_from_json(const nlohmann::json& j, const std::string& source_name);

/// Reads either format; content starting with '{' is parsed as JSON.
DenseMatrix read_matrix_file(const std::string& path);

std::string write_matrix_text(const DenseMatrix& m);
nlohmann::ordered_json matrix_to_json(const DenseMatrix& m);

}  // namespace minusorder
