#include <set>
#include <string>

#include "json.hpp"
#include "sipkit/norms.hpp"

namespace sipkit {
namespace {

using nlohmann::json;

void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::set<std::string>& required,
                  std::string_view context) {
  if (!j.is_object()) {
    throw InvalidInput(std::string(context) + ": expected a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw InvalidInput(std::string(context) + ": unknown field \"" + key +
                         "\"");
    }
  }
  for (const auto& key : required) {
    if (!j.contains(key)) {
      throw InvalidInput(std::string(context) + ": missing field \"" + key +
                         "\"");
    }
  }
}

double number(const json& j, std::string_view what) {
  if (!j.is_number()) {
    throw InvalidInput(std::string(what) + " must be a number");
  }
  return j.get<double>();
}

Vector vector_from(const json& j, std::string_view what) {
  if (!j.is_array()) {
    throw InvalidInput(std::string(what) + " must be an array of numbers");
  }
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = number(j[i], what);
  }
  return v;
}

Matrix rows_from(const json& j, std::string_view what) {
  if (!j.is_array() || j.empty()) {
    throw InvalidInput(std::string(what) + " must be a nonempty array of rows");
  }
  const auto cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) {
    throw InvalidInput(std::string(what) + " rows must be nonempty arrays");
  }
  Matrix m(static_cast<Eigen::Index>(j.size()),
           static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Vector row = vector_from(j[r], what);
    if (static_cast<std::size_t>(row.size()) != cols) {
      throw InvalidInput(std::string(what) + " rows have unequal lengths");
    }
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  if (!m.allFinite()) {
    throw InvalidInput(std::string(what) + " has non-finite entries");
  }
  return m;
}

NormSpec spec_from(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw InvalidInput("norm spec: missing string field \"type\"");
  }
  const auto type = j["type"].get<std::string>();
  if (type == "lp") {
    require_keys(j, {"type", "p", "dim"}, {"type", "p", "dim"}, "lp");
    if (!j["dim"].is_number_integer()) {
      throw InvalidInput("lp: dim must be a positive integer");
    }
    return NormSpec::lp(number(j["p"], "lp.p"), j["dim"].get<int>());
  }
  if (type == "weighted_lp") {
    require_keys(j, {"type", "p", "weights"}, {"type", "p", "weights"},
                 "weighted_lp");
    return NormSpec::weighted_lp(number(j["p"], "weighted_lp.p"),
                                 vector_from(j["weights"], "weights"));
  }
  if (type == "ellipsoid") {
    require_keys(j, {"type", "Q"}, {"type", "Q"}, "ellipsoid");
    return NormSpec::ellipsoid(rows_from(j["Q"], "Q"));
  }
  if (type == "direct_sum") {
    require_keys(j, {"type", "parts"}, {"type", "parts"}, "direct_sum");
    if (!j["parts"].is_array()) {
      throw InvalidInput("direct_sum: parts must be an array");
    }
    std::vector<NormSpec> parts;
    for (const auto& part : j["parts"]) parts.push_back(spec_from(part));
    return build_direct_sum(std::move(parts));
  }
  if (type == "l1" || type == "linf") {
    throw InvalidInput("norm type \"" + type +
                       "\" is not smooth and is not supported");
  }
  throw InvalidInput("unknown norm type \"" + type + "\"");
}

json spec_to(const NormSpec& spec) {
  switch (spec.family()) {
    case NormFamily::lp:
      return {{"type", "lp"}, {"p", spec.p()}, {"dim", spec.dim()}};
    case NormFamily::weighted_lp:
      return {{"type", "weighted_lp"},
              {"p", spec.p()},
              {"weights", std::vector<double>(spec.weights().begin(),
                                              spec.weights().end())}};
    case NormFamily::ellipsoid: {
      json rows = json::array();
      for (Eigen::Index r = 0; r < spec.q().rows(); ++r) {
        const Vector row = spec.q().row(r).transpose();
        rows.push_back(std::vector<double>(row.begin(), row.end()));
      }
      return {{"type", "ellipsoid"}, {"Q", rows}};
    }
    case NormFamily::direct_sum: {
      json parts = json::array();
      for (const auto& part : spec.parts()) parts.push_back(spec_to(part));
      return {{"type", "direct_sum"}, {"parts", parts}};
    }
    case NormFamily::custom:
      break;
  }
  throw InvalidInput("custom norms have no file representation");
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("invalid JSON: ") + e.what());
  }
}

Matrix basis_from(const json& j, int dim, std::string_view what) {
  const Matrix rows = rows_from(j, what);
  if (rows.cols() != dim) {
    throw InvalidInput("dimension mismatch: " + std::string(what) +
                       " vectors have length " + std::to_string(rows.cols()) +
                       ", expected " + std::to_string(dim));
  }
  return rows.transpose();
}

}  // namespace

NormSpec parse_norm_spec(std::string_view json_text) {
  return spec_from(parse_text(json_text));
}

std::string norm_spec_to_json(const NormSpec& spec) {
  return spec_to(spec).dump();
}

Matrix parse_operator(std::string_view json_text) {
  const json j = parse_text(json_text);
  require_keys(j, {"matrix"}, {"matrix"}, "operator");
  Matrix m = rows_from(j["matrix"], "matrix");
  if (m.rows() != m.cols()) throw InvalidInput("operator matrix must be square");
  return m;
}

Matrix parse_subspace(std::string_view json_text, int dim) {
  const json j = parse_text(json_text);
  require_keys(j, {"basis"}, {"basis"}, "subspace");
  return basis_from(j["basis"], dim, "basis");
}

std::vector<Matrix> parse_subspace_list(std::string_view json_text, int dim) {
  const json j = parse_text(json_text);
  require_keys(j, {"subspaces"}, {"subspaces"}, "subspace list");
  if (!j["subspaces"].is_array() || j["subspaces"].empty()) {
    throw InvalidInput("subspaces must be a nonempty array");
  }
  std::vector<Matrix> out;
  for (const auto& s : j["subspaces"]) {
    out.push_back(basis_from(s, dim, "subspace"));
  }
  return out;
}

}  // namespace sipkit
