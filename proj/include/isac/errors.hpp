#pragma once

#include <stdexcept>
#include <string>

namespace isac {

/// A scenario document that does not conform to the schema. `field` is a
/// JSON-pointer style path such as "/scene/target_m".
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class DimensionError : public SchemaError {
 public:
  using SchemaError::SchemaError;
};

/// The Fisher information matrix is singular: the target is not observable
/// under the given power vector.
class SingularFimError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace isac
