#ifndef OPTKIT_SERIALIZE_HPP
#define OPTKIT_SERIALIZE_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "optkit/bloch.hpp"
#include "optkit/dims.hpp"
#include "optkit/model.hpp"
#include "optkit/tomography.hpp"

namespace optkit {

using Json = nlohmann::ordered_json;

// Input that does not match a schema. `pointer` is the JSON pointer of the
// offending value ("" for the document root).
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : std::runtime_error((pointer.empty() ? std::string("/") : pointer) + ": " + what), pointer_(std::move(pointer)) {}

  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

// {"kind": "quantum", "dim": d} | {"kind": "classical", "n": n} |
// {"kind": "composite", "parts": [spec, spec]}; no other keys allowed.
Model parse_model_spec(const Json& spec);
// Canonical form of a spec (keys in schema order), echoed into reports.
Json canonical_model_spec(const Json& spec);

// A transformation read from {"format": "choi" | "kraus" | "bloch", "data": ...}.
// Native formats also keep the Choi matrix for oracle checks.
struct LoadedTransformation {
  TransMatrix bloch;
  std::optional<ChoiMatrix> choi;
  std::string format;
};

LoadedTransformation parse_transformation_spec(const Json& spec, const Model& m);

Json complex_matrix_to_json(const CMat& m);
Json real_matrix_to_json(const Mat& m);
CMat complex_matrix_from_json(const Json& j, const std::string& pointer);
Mat real_matrix_from_json(const Json& j, const std::string& pointer);

Json count_table_to_json(const CountTable& table);
CountTable count_table_from_json(const Json& j);

Json audit_to_json(const AuditReport& report);

// Report envelope: keys in the fixed order command, model, seed, tolerances,
// checks, violations, result.
struct ReportCheck {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
};

struct ReportEnvelope {
  std::string command;
  Json model;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> tolerances;
  std::vector<ReportCheck> checks;
  Json result;  // null when the command has no payload

  Index violations() const;
  Json to_json() const;
};

// Serializes with every floating-point number printed with 17 significant
// digits, so identical inputs give byte-identical output.
std::string dump_stable(const Json& j, int indent = 2);

}  // namespace optkit

#endif  // OPTKIT_SERIALIZE_HPP
