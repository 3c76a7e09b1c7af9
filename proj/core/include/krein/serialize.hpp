#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "krein/angular.hpp"

namespace krein::io {

using Json = nlohmann::ordered_json;

/// {"rows", "cols", "re": [...], "im": [...]} in row-major order.
Json to_json(const Matrix& m);
Json to_json(const RealVector& v);

/// Accepts the object form above ("im" optional) or a nested array of real
/// rows. Throws MalformedInput.
Matrix matrix_from_json(const Json& j);

struct Problem {
  SignatureSpace space;
  PartialContraction t0;
};

/// {"J", "T0_domain", "T0_action"}; "domain"/"action" are accepted too.
/// Domain and action hold spanning vectors and their images as columns.
Problem parse_problem(const Json& j, const Tolerances& tol = kDefaultTolerances);
Json problem_to_json(const PartialContraction& t0);

Json read_json_file(const std::filesystem::path& path);
Problem load_problem(const std::filesystem::path& path, const Tolerances& tol = kDefaultTolerances);

/// "%.17g"; non-finite values become null in JSON output.
std::string format_double(double v);
/// Deterministic JSON text with 17 significant digits for every number.
std::string dump(const Json& j, int indent = 2);

/// Real parts (and imaginary parts when any are nonzero) as CSV rows.
std::string matrix_csv(const Matrix& m);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace krein::io
