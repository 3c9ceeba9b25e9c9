#include "optkit/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace optkit {

namespace {

std::string child(const std::string& pointer, const std::string& key) { return pointer + "/" + key; }
std::string child(const std::string& pointer, std::size_t index) { return pointer + "/" + std::to_string(index); }

void require_keys(const Json& j, const std::string& pointer, const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw SchemaError(child(pointer, it.key()), "unexpected key");
    }
  }
  for (const std::string& key : allowed) {
    if (!j.contains(key)) throw SchemaError(child(pointer, key), "missing required key");
  }
}

long long require_int(const Json& j, const std::string& pointer, long long lo, long long hi) {
  if (!j.is_number_integer()) throw SchemaError(pointer, "expected an integer");
  const long long v = j.get<long long>();
  if (v < lo || v > hi) {
    std::ostringstream msg;
    msg << "value " << v << " outside [" << lo << ", " << hi << "]";
    throw SchemaError(pointer, msg.str());
  }
  return v;
}

double require_number(const Json& j, const std::string& pointer) {
  if (!j.is_number()) throw SchemaError(pointer, "expected a number");
  return j.get<double>();
}

Complex require_complex(const Json& j, const std::string& pointer) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw SchemaError(pointer, "expected a complex number [re, im]");
  return {require_number(j[0], child(pointer, std::size_t{0})), require_number(j[1], child(pointer, std::size_t{1}))};
}

void require_shape(const Json& j, const std::string& pointer, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) {
    std::ostringstream msg;
    msg << "expected " << rows << " rows";
    throw SchemaError(pointer, msg.str());
  }
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      std::ostringstream msg;
      msg << "expected " << cols << " columns";
      throw SchemaError(child(pointer, i), msg.str());
    }
  }
}

void write_number(std::ostream& os, double v) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

void write(std::ostream& os, const Json& j, int indent, int depth) {
  const auto newline = [&](int level) {
    if (indent < 0) return;
    os << '\n' << std::string(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        os << Json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        write(os, it.value(), indent, depth + 1);
      }
      newline(depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      os << '[';
      bool first = true;
      for (const Json& e : j) {
        if (!first) os << (flat ? ", " : ",");
        first = false;
        if (!flat) newline(depth + 1);
        write(os, e, indent, depth + 1);
      }
      if (!flat) newline(depth);
      os << ']';
      return;
    }
    case Json::value_t::number_float:
      write_number(os, j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

Model parse_model_spec_at(const Json& spec, const std::string& pointer) {
  if (!spec.is_object()) throw SchemaError(pointer, "model spec must be an object");
  if (!spec.contains("kind") || !spec["kind"].is_string()) {
    throw SchemaError(child(pointer, "kind"), "expected one of \"quantum\", \"classical\", \"composite\"");
  }
  const std::string kind = spec["kind"].get<std::string>();
  if (kind == "quantum") {
    require_keys(spec, pointer, {"kind", "dim"});
    return quantum_model(require_int(spec["dim"], child(pointer, "dim"), 2, 8));
  }
  if (kind == "classical") {
    require_keys(spec, pointer, {"kind", "n"});
    return classical_model(require_int(spec["n"], child(pointer, "n"), 2, 64));
  }
  if (kind == "composite") {
    require_keys(spec, pointer, {"kind", "parts"});
    const Json& parts = spec["parts"];
    if (!parts.is_array() || parts.size() != 2) {
      throw SchemaError(child(pointer, "parts"), "expected exactly two model specs");
    }
    const std::string base = child(pointer, "parts");
    const Model a = parse_model_spec_at(parts[0], child(base, std::size_t{0}));
    const Model b = parse_model_spec_at(parts[1], child(base, std::size_t{1}));
    if (a.kind() == ModelKind::composite || b.kind() == ModelKind::composite) {
      throw SchemaError(base, "composites are limited to two parties");
    }
    try {
      return composite_model(a, b);
    } catch (const Error& e) {
      throw SchemaError(base, e.what());
    }
  }
  throw SchemaError(child(pointer, "kind"), "unknown kind \"" + kind + "\"");
}

Model parse_model_spec(const Json& spec) { return parse_model_spec_at(spec, ""); }

Json canonical_model_spec(const Json& spec) {
  Json out;
  const std::string kind = spec.at("kind").get<std::string>();
  out["kind"] = kind;
  if (kind == "quantum") out["dim"] = spec.at("dim");
  else if (kind == "classical") out["n"] = spec.at("n");
  else out["parts"] = Json::array({canonical_model_spec(spec.at("parts")[0]), canonical_model_spec(spec.at("parts")[1])});
  return out;
}

CMat complex_matrix_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw SchemaError(pointer, "expected a matrix (array of rows)");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  require_shape(j, pointer, rows, cols);
  CMat m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) = require_complex(j[r][c], child(child(pointer, r), c));
    }
  }
  return m;
}

Mat real_matrix_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw SchemaError(pointer, "expected a matrix (array of rows)");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  require_shape(j, pointer, rows, cols);
  Mat m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) = require_number(j[r][c], child(child(pointer, r), c));
    }
  }
  return m;
}

Json complex_matrix_to_json(const CMat& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json real_matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

LoadedTransformation parse_transformation_spec(const Json& spec, const Model& m) {
  if (!spec.is_object()) throw SchemaError("", "transformation spec must be an object");
  require_keys(spec, "", {"format", "data"});
  if (!spec["format"].is_string()) throw SchemaError("/format", "expected a string");
  const std::string format = spec["format"].get<std::string>();
  const Json& data = spec["data"];
  const auto n = static_cast<std::size_t>(m.native_dim());
  LoadedTransformation out;
  out.format = format;
  if (format == "bloch") {
    const auto size = static_cast<std::size_t>(m.size());
    require_shape(data, "/data", size, size);
    out.bloch = TransMatrix(real_matrix_from_json(data, "/data"));
    return out;
  }
  if (format == "choi") {
    require_shape(data, "/data", n * n, n * n);
    out.choi = ChoiMatrix{complex_matrix_from_json(data, "/data"), m.native_dim(), m.native_dim()};
  } else if (format == "kraus") {
    if (!data.is_array() || data.empty()) throw SchemaError("/data", "expected a non-empty list of Kraus operators");
    KrausSet kraus;
    for (std::size_t k = 0; k < data.size(); ++k) {
      const std::string pointer = child("/data", k);
      require_shape(data[k], pointer, n, n);
      kraus.push_back(complex_matrix_from_json(data[k], pointer));
    }
    out.choi = choi_from_kraus(kraus);
  } else {
    throw SchemaError("/format", "unknown format \"" + format + "\" (expected choi, kraus or bloch)");
  }
  try {
    out.bloch = encode_channel(*out.choi, m, Validate::yes);
  } catch (const Error& e) {
    throw SchemaError("/data", e.what());
  }
  return out;
}

Json count_table_to_json(const CountTable& table) {
  Json j;
  j["shots"] = table.shots;
  j["no_click"] = table.no_click;
  Json rows = Json::array();
  for (Index r = 0; r < table.counts.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < table.counts.cols(); ++c) row.push_back(table.counts(r, c));
    rows.push_back(std::move(row));
  }
  j["counts"] = std::move(rows);
  return j;
}

CountTable count_table_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("", "count table must be an object");
  require_keys(j, "", {"shots", "no_click", "counts"});
  const auto as_count = [](const Json& v, const std::string& pointer) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw SchemaError(pointer, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  };
  CountTable t;
  t.shots = as_count(j["shots"], "/shots");
  t.no_click = as_count(j["no_click"], "/no_click");
  const Json& counts = j["counts"];
  if (!counts.is_array() || counts.empty()) throw SchemaError("/counts", "expected a square matrix");
  require_shape(counts, "/counts", counts.size(), counts.size());
  const auto size = static_cast<Index>(counts.size());
  t.counts.resize(size, size);
  std::uint64_t total = t.no_click;
  for (Index r = 0; r < size; ++r) {
    for (Index c = 0; c < size; ++c) {
      t.counts(r, c) = as_count(counts[r][c], "/counts/" + std::to_string(r) + "/" + std::to_string(c));
      total += t.counts(r, c);
    }
  }
  if (total != t.shots) throw SchemaError("/shots", "counts do not sum to shots");
  return t;
}

Json audit_to_json(const AuditReport& report) {
  Json j;
  j["adm"] = report.adm_single;
  j["adm_pair"] = report.adm_pair;
  j["idim"] = report.idim_single;
  j["idim_pair"] = report.idim_pair;
  j["pair_idim_monotone"] = report.pair_idim_monotone;
  j["witness_deviation"] = report.witness_deviation;
  Json arithmetic = Json::array();
  for (const Check& c : report.checks) {
    Json e;
    e["name"] = c.name;
    e["lhs"] = c.measured;
    e["relation"] = c.relation;
    e["rhs"] = c.bound;
    arithmetic.push_back(std::move(e));
  }
  j["arithmetic"] = std::move(arithmetic);
  return j;
}

Index ReportEnvelope::violations() const {
  return static_cast<Index>(std::count_if(checks.begin(), checks.end(), [](const ReportCheck& c) { return !c.pass; }));
}

Json ReportEnvelope::to_json() const {
  Json j;
  j["command"] = command;
  j["model"] = model;
  j["seed"] = seed;
  Json tol = Json::object();
  for (const auto& [name, value] : tolerances) tol[name] = value;
  j["tolerances"] = std::move(tol);
  Json list = Json::array();
  for (const ReportCheck& c : checks) {
    Json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["measured"] = c.measured;
    e["bound"] = c.bound;
    list.push_back(std::move(e));
  }
  j["checks"] = std::move(list);
  j["violations"] = violations();
  if (!result.is_null()) j["result"] = result;
  return j;
}

std::string dump_stable(const Json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  return os.str();
}

}  // namespace optkit
