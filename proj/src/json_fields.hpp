#pragma once

// Path-aware accessors for scenario documents. Every failure throws a
// SchemaError naming the offending field.

#include <cmath>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include "json.hpp"

#include "isac/errors.hpp"

namespace isac::json_fields {

using nlohmann::json;

inline std::string child(const std::string& path, std::string_view key) {
  return path + "/" + std::string(key);
}

inline std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

inline void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
}

inline void check_keys(const json& j, std::initializer_list<std::string_view> allowed, const std::string& path) {
  require_object(j, path);
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == key;
    if (!ok) throw SchemaError(child(path, key), "unknown field");
  }
}

inline const json& require(const json& j, std::string_view key, const std::string& path) {
  require_object(j, path);
  auto it = j.find(std::string(key));
  if (it == j.end()) throw SchemaError(child(path, key), "missing required field");
  return *it;
}

inline double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
  return v;
}

inline double number(const json& j, std::string_view key, const std::string& path) {
  return as_number(require(j, key, path), child(path, key));
}

inline double number_or(const json& j, std::string_view key, const std::string& path, double fallback) {
  auto it = j.find(std::string(key));
  return it == j.end() || it->is_null() ? fallback : as_number(*it, child(path, key));
}

inline std::optional<double> optional_number(const json& j, std::string_view key, const std::string& path) {
  auto it = j.find(std::string(key));
  if (it == j.end() || it->is_null()) return std::nullopt;
  return as_number(*it, child(path, key));
}

inline std::uint64_t unsigned_or(const json& j, std::string_view key, const std::string& path,
                                 std::uint64_t fallback) {
  auto it = j.find(std::string(key));
  if (it == j.end() || it->is_null()) return fallback;
  const bool ok = it->is_number_unsigned() || (it->is_number_integer() && it->get<std::int64_t>() >= 0);
  if (!ok) throw SchemaError(child(path, key), "expected a non-negative integer");
  return it->get<std::uint64_t>();
}

inline Eigen::VectorXd as_vector(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = as_number(j[i], child(path, i));
  return v;
}

/// Accepts either a scalar (broadcast to `size`) or an array of length `size`.
inline Eigen::VectorXd scalar_or_vector(const json& j, const std::string& path, Eigen::Index size) {
  if (j.is_number()) return Eigen::VectorXd::Constant(size, as_number(j, path));
  Eigen::VectorXd v = as_vector(j, path);
  if (v.size() != size)
    throw DimensionError(path, "expected " + std::to_string(size) + " entries, got " + std::to_string(v.size()));
  return v;
}

inline Eigen::MatrixXd as_matrix(const json& j, const std::string& path, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of rows");
  if (static_cast<Eigen::Index>(j.size()) != rows)
    throw DimensionError(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto rpath = child(path, static_cast<std::size_t>(r));
    Eigen::VectorXd row = as_vector(j[static_cast<std::size_t>(r)], rpath);
    if (row.size() != cols)
      throw DimensionError(rpath, "expected " + std::to_string(cols) + " columns, got " + std::to_string(row.size()));
    m.row(r) = row.transpose();
  }
  return m;
}

inline json to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline json to_json(const Eigen::MatrixXd& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(to_json(Eigen::VectorXd(m.row(r).transpose())));
  return a;
}

}  // namespace isac::json_fields
