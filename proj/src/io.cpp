#include "minproj/io.hpp"

#include "minproj/error.hpp"

#include <algorithm>

namespace minproj::io {

namespace {

[[noreturn]] void input_error(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based and points one past the offending character.
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    input_error("JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(column));
  }
}

const char* kind_name(const Json& j) {
  if (j.is_number_float()) return "a float";
  if (j.is_number()) return "a bare integer";
  return j.type_name();
}

Rational read_rational(const Json& j, const std::string& path) {
  if (!j.is_string()) {
    input_error(path + ": expected a rational string such as \"3/4\", got " + kind_name(j));
  }
  const auto r = parse_rational(j.get_ref<const std::string&>());
  if (!r) input_error(path + ": \"" + j.get<std::string>() + "\" is not a rational p/q");
  return *r;
}

std::size_t read_count(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned()) input_error(path + ": expected a non-negative integer, got " + kind_name(j));
  return j.get<std::size_t>();
}

const Json& require(const Json& obj, const char* key, const std::string& path = "") {
  if (!obj.is_object()) input_error((path.empty() ? "document" : path) + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) input_error((path.empty() ? "" : path + ".") + key + ": missing");
  return *it;
}

std::vector<Vector> read_vectors(const Json& j, const std::string& path, std::size_t dim) {
  if (!j.is_array()) input_error(path + ": expected an array of vectors");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array()) input_error(at + ": expected an array of rational strings");
    if (j[i].size() != dim) {
      input_error(at + ": has " + std::to_string(j[i].size()) + " entries, dim is " + std::to_string(dim));
    }
    Vector v;
    for (std::size_t c = 0; c < dim; ++c) v.push_back(read_rational(j[i][c], at + "[" + std::to_string(c) + "]"));
    out.push_back(std::move(v));
  }
  return out;
}

PolyhedralSpace read_space(const Json& doc, std::size_t dim) {
  auto vertices = read_vectors(require(doc, "vertices"), "vertices", dim);
  if (vertices.empty()) input_error("vertices: empty");
  if (const auto it = doc.find("dual_vertices"); it != doc.end()) {
    auto duals = read_vectors(*it, "dual_vertices", dim);
    return PolyhedralSpace::from_vertices_and_duals(std::move(vertices), std::move(duals));
  }
  return PolyhedralSpace::from_vertices(std::move(vertices));
}

std::size_t read_dim(const Json& doc) {
  const std::size_t dim = read_count(require(doc, "dim"), "dim");
  if (dim < 2) input_error("dim: must be at least 2");
  return dim;
}

}  // namespace

ProblemInput parse_problem(std::string_view text) {
  const Json doc = parse_json(text);
  const std::size_t dim = read_dim(doc);
  auto space = read_space(doc, dim);
  const auto basis = read_vectors(require(doc, "subspace_basis"), "subspace_basis", dim);
  try {
    return {std::move(space), Subspace::from_basis(dim, basis)};
  } catch (const Error& e) {
    throw Error(e.code(), std::string("subspace_basis: ") + e.what());
  }
}

std::vector<Vector> parse_vertices(std::string_view text) {
  const Json doc = parse_json(text);
  const std::size_t dim = read_dim(doc);
  auto vertices = read_vectors(require(doc, "vertices"), "vertices", dim);
  if (vertices.empty()) input_error("vertices: empty");
  return vertices;
}

Json rational_json(const Rational& r) { return to_string(r); }

Json vector_json(std::span<const Rational> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r)));
  return out;
}

Json pairs_json(const std::vector<NormingPair>& pairs) {
  Json out = Json::array();
  for (const auto& p : pairs) out.push_back({{"vertex", p.vertex}, {"functional", p.functional}});
  return out;
}

Json problem_to_json(const PolyhedralSpace& space, const Subspace& y) {
  Json out;
  out["dim"] = space.dim();
  Json vertices = Json::array(), duals = Json::array(), basis = Json::array();
  for (const auto& v : space.primal()) vertices.push_back(vector_json(v));
  for (const auto& f : space.dual()) duals.push_back(vector_json(f));
  for (std::size_t c = 0; c < y.dim(); ++c) basis.push_back(vector_json(y.basis().column(c)));
  out["vertices"] = std::move(vertices);
  out["dual_vertices"] = std::move(duals);
  out["subspace_basis"] = std::move(basis);
  return out;
}

CertificateFile parse_certificate(std::string_view text) {
  const Json doc = parse_json(text);
  CertificateFile out;
  out.lambda = read_rational(require(doc, "lambda"), "lambda");
  const Json& pairs = require(doc, "pairs");
  if (!pairs.is_array() || pairs.empty()) input_error("pairs: expected a non-empty array");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string at = "pairs[" + std::to_string(i) + "]";
    out.cm.pairs.push_back({read_count(require(pairs[i], "vertex", at), at + ".vertex"),
                            read_count(require(pairs[i], "functional", at), at + ".functional")});
    out.cm.weights.push_back(read_rational(require(pairs[i], "weight", at), at + ".weight"));
  }
  if (const auto it = doc.find("projection"); it != doc.end()) {
    if (!it->is_array() || it->empty()) input_error("projection: expected a square matrix");
    const auto rows = read_vectors(*it, "projection", it->size());
    out.projection = Matrix::from_rows(rows, rows.size());
  }
  return out;
}

Json certificate_to_json(const CMFunctional& cm, const Rational& lambda, const Matrix* projection) {
  Json out;
  out["lambda"] = to_string(lambda);
  Json pairs = Json::array();
  for (std::size_t i = 0; i < cm.pairs.size(); ++i) {
    pairs.push_back({{"vertex", cm.pairs[i].vertex},
                     {"functional", cm.pairs[i].functional},
                     {"weight", to_string(cm.weights[i])}});
  }
  out["pairs"] = std::move(pairs);
  if (projection) out["projection"] = matrix_json(*projection);
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace minproj::io
