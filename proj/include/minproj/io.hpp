#pragma once

#include "minproj/catalog.hpp"
#include "minproj/certificate.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace minproj::io {

using Json = nlohmann::ordered_json;

struct ProblemInput {
  PolyhedralSpace space;
  Subspace subspace;
};

/// Parses { "dim", "vertices", "dual_vertices"?, "subspace_basis" }. Every
/// number must be a rational string. Syntax errors report line and column;
/// content errors name the offending field, e.g. "vertices[2][0]".
/// Throws Error with INVALID_INPUT or the validation code of the space.
ProblemInput parse_problem(std::string_view text);

/// The vertex list alone (for polar); "subspace_basis" is not required.
std::vector<Vector> parse_vertices(std::string_view text);

Json problem_to_json(const PolyhedralSpace& space, const Subspace& y);

struct CertificateFile {
  Rational lambda;
  CMFunctional cm;
  std::optional<Matrix> projection;
};

/// { "lambda", "pairs": [{ "vertex", "functional", "weight" }], "projection"? }
CertificateFile parse_certificate(std::string_view text);
Json certificate_to_json(const CMFunctional& cm, const Rational& lambda, const Matrix* projection);

Json rational_json(const Rational& r);
Json vector_json(std::span<const Rational> v);
Json matrix_json(const Matrix& m);
Json pairs_json(const std::vector<NormingPair>& pairs);

/// Two-space indented dump followed by a newline.
std::string dump(const Json& j);

}  // namespace minproj::io
