#include "cascade/io/documents.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace lqss::io {

namespace {

std::string child(const std::string& field, const std::string& key) { return field + "/" + key; }
std::string child(const std::string& field, Index i) { return field + "/" + std::to_string(i); }

template <typename A, typename B>
bool same(const A& a, const B& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
}

const json& require(const json& j, const std::string& key, const std::string& field) {
  if (!j.is_object()) throw DocumentError(field, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw DocumentError(child(field, key), "missing required field");
  return *it;
}

Index read_count(const json& j, const std::string& key, const std::string& field) {
  const json& v = require(j, key, field);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw DocumentError(child(field, key), "expected a non-negative integer");
  return static_cast<Index>(v.get<long long>());
}

double read_real(const json& j, const std::string& field) {
  if (!j.is_number()) throw DocumentError(field, "expected a real number");
  return j.get<double>();
}

Complex read_complex(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2)
    throw DocumentError(field, "expected a complex number encoded as [re, im]");
  return {read_real(j[0], child(field, 0)), read_real(j[1], child(field, 1))};
}

void check_rows(const json& j, Index rows, const std::string& field) {
  if (!j.is_array()) throw DocumentError(field, "expected an array of rows");
  if (static_cast<Index>(j.size()) != rows)
    throw DocumentError(field, "expected " + std::to_string(rows) + " rows, found " +
                                   std::to_string(j.size()));
}

void check_cols(const json& row, Index cols, const std::string& field) {
  if (!row.is_array()) throw DocumentError(field, "expected a row array");
  if (static_cast<Index>(row.size()) != cols)
    throw DocumentError(field, "expected " + std::to_string(cols) + " columns, found " +
                                   std::to_string(row.size()));
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw DocumentError("", e.what(), line, column);
  }
}

json chain_stage(const SlhSystem& stage) {
  return {{"S", encode(stage.scattering())},
          {"K", encode(stage.coupling())},
          {"R", encode(stage.hamiltonian())}};
}

}  // namespace

DocumentError::DocumentError(std::string field, const std::string& message,
                             std::optional<std::size_t> line, std::optional<std::size_t> column)
    : Error(ErrorKind::ParseError,
            (field.empty() ? std::string() : field + ": ") + message +
                (line ? " (line " + std::to_string(*line) + ", column " +
                            std::to_string(column.value_or(0)) + ")"
                      : std::string())),
      field_(std::move(field)),
      line_(line),
      column_(column) {}

bool operator==(const SystemDocument& a, const SystemDocument& b) {
  return a.schema_version == b.schema_version && a.form == b.form && a.n == b.n && a.m == b.m &&
         same(a.S, b.S) && same(a.K, b.K) && same(a.R, b.R) && same(a.K_tilde, b.K_tilde) &&
         same(a.R_tilde, b.R_tilde);
}

json encode(Complex z) { return json::array({z.real(), z.imag()}); }

json encode(const CMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json encode(const RMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix decode_complex_matrix(const json& j, Index rows, Index cols, const std::string& field) {
  check_rows(j, rows, field);
  CMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    check_cols(row, cols, child(field, i));
    for (Index k = 0; k < cols; ++k)
      out(i, k) = read_complex(row[static_cast<std::size_t>(k)], child(child(field, i), k));
  }
  return out;
}

RMatrix decode_real_matrix(const json& j, Index rows, Index cols, const std::string& field) {
  check_rows(j, rows, field);
  RMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    check_cols(row, cols, child(field, i));
    for (Index k = 0; k < cols; ++k) {
      const json& v = row[static_cast<std::size_t>(k)];
      if (v.is_array())
        throw DocumentError(child(child(field, i), k), "R must be real; use plain numbers");
      out(i, k) = read_real(v, child(child(field, i), k));
    }
  }
  return out;
}

json to_json(const SystemDocument& doc) {
  json j = {{"schema_version", doc.schema_version},
            {"form", doc.form == Form::General ? "general" : "passive"},
            {"n", doc.n},
            {"m", doc.m},
            {"S", encode(doc.S)}};
  if (doc.form == Form::General) {
    j["K"] = encode(doc.K);
    j["R"] = encode(doc.R);
  } else {
    j["K_tilde"] = encode(doc.K_tilde);
    j["R_tilde"] = encode(doc.R_tilde);
  }
  return j;
}

SystemDocument system_document_from_json(const json& j) {
  if (!j.is_object()) throw DocumentError("", "document must be a JSON object");
  SystemDocument doc;
  const json& version = require(j, "schema_version", "");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion)
    throw DocumentError("/schema_version",
                        "unsupported schema version (expected \"" + std::string(kSchemaVersion) +
                            "\")");
  doc.schema_version = version.get<std::string>();
  const json& form = require(j, "form", "");
  if (form == "general") {
    doc.form = Form::General;
  } else if (form == "passive") {
    doc.form = Form::Passive;
  } else {
    throw DocumentError("/form", "expected \"general\" or \"passive\"");
  }
  doc.n = read_count(j, "n", "");
  doc.m = read_count(j, "m", "");
  doc.S = decode_complex_matrix(require(j, "S", ""), doc.m, doc.m, "/S");
  if (doc.form == Form::General) {
    doc.K = decode_complex_matrix(require(j, "K", ""), doc.m, 2 * doc.n, "/K");
    doc.R = decode_real_matrix(require(j, "R", ""), 2 * doc.n, 2 * doc.n, "/R");
  } else {
    doc.K_tilde = decode_complex_matrix(require(j, "K_tilde", ""), doc.m, doc.n, "/K_tilde");
    doc.R_tilde = decode_complex_matrix(require(j, "R_tilde", ""), doc.n, doc.n, "/R_tilde");
    const double herm = max_norm(doc.R_tilde - doc.R_tilde.adjoint());
    if (herm > 1e-9)
      throw DocumentError("/R_tilde", "R_tilde is not Hermitian (residual " +
                                          std::to_string(herm) + ")");
  }
  return doc;
}

SystemDocument parse_system_document(std::string_view text) {
  return system_document_from_json(parse_json(text));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("", "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DocumentError("", "cannot write " + path.string());
  out << contents;
}

SystemDocument read_system_document(const std::filesystem::path& path) {
  return parse_system_document(read_file(path));
}

SlhSystem to_system(const SystemDocument& doc, const Tolerances& tol) {
  if (doc.form == Form::General) return SlhSystem(doc.S, doc.K, doc.R, tol);
  PassiveForm pf;
  pf.K_tilde = doc.K_tilde;
  pf.R_tilde = doc.R_tilde;
  pf.offset = 0.25 * doc.R_tilde.trace().real();
  return from_passive_form(pf, doc.S, doc.n, tol);
}

SystemDocument general_document(const SlhSystem& sys) {
  SystemDocument doc;
  doc.form = Form::General;
  doc.n = sys.modes();
  doc.m = sys.fields();
  doc.S = sys.scattering();
  doc.K = sys.coupling();
  doc.R = sys.hamiltonian();
  return doc;
}

std::string canonical_dump(const json& j) { return j.dump(); }

std::string digest(const SystemDocument& doc) {
  const std::string text = canonical_dump(to_json(doc));
  unsigned char hash[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), hash, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  os << "sha256:" << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(hash[i]);
  return os.str();
}

json to_json(const TriangularityReport& r) {
  return {{"is_triangular", r.is_triangular},
          {"max_upper_residual", r.max_upper_residual},
          {"tolerance", r.tolerance_used},
          {"scale", r.scale}};
}

json to_json(const EquivalenceReport& r) {
  return {{"max_rel_mismatch", r.max_rel_mismatch},
          {"samples", r.samples_used},
          {"seed", r.seed},
          {"tolerance", r.tolerance},
          {"verdict", r.verdict}};
}

json to_json(const SymplecticReport& r) {
  return {{"ccr_residual", r.ccr_residual},
          {"orthogonality_residual", r.orthogonality_residual},
          {"tolerance", r.tolerance},
          {"verdict", r.verdict}};
}

json to_json(const RealizationDocument& doc) {
  json stages = json::array();
  for (const SlhSystem& stage : doc.chain.stages) stages.push_back(chain_stage(stage));
  json reports = json::object();
  if (doc.triangularity) reports["triangularity"] = to_json(*doc.triangularity);
  if (doc.symplectic) reports["symplectic"] = to_json(*doc.symplectic);
  if (doc.equivalence) reports["equivalence"] = to_json(*doc.equivalence);
  json j = {{"schema_version", doc.schema_version},
            {"input_digest", doc.input_digest},
            {"stages", std::move(stages)},
            {"reports", std::move(reports)}};
  if (doc.V) j["V"] = encode(*doc.V);
  if (doc.chain.residual_R) j["residual_R"] = encode(*doc.chain.residual_R);
  return j;
}

RealizationDocument realization_document_from_json(const json& j) {
  if (!j.is_object()) throw DocumentError("", "document must be a JSON object");
  RealizationDocument doc;
  const json& version = require(j, "schema_version", "");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion)
    throw DocumentError("/schema_version", "unsupported schema version");
  const json& dig = require(j, "input_digest", "");
  if (!dig.is_string()) throw DocumentError("/input_digest", "expected a string");
  doc.input_digest = dig.get<std::string>();

  const json& stages = require(j, "stages", "");
  if (!stages.is_array() || stages.empty())
    throw DocumentError("/stages", "expected a non-empty array of stages");
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const std::string field = "/stages/" + std::to_string(i);
    const json& st = stages[i];
    const json& s_json = require(st, "S", field);
    if (!s_json.is_array()) throw DocumentError(field + "/S", "expected an array of rows");
    const Index m = static_cast<Index>(s_json.size());
    CMatrix S = decode_complex_matrix(s_json, m, m, field + "/S");
    CMatrix K = decode_complex_matrix(require(st, "K", field), m, 2, field + "/K");
    RMatrix R = decode_real_matrix(require(st, "R", field), 2, 2, field + "/R");
    try {
      doc.chain.stages.emplace_back(std::move(S), std::move(K), std::move(R));
    } catch (const Error& e) {
      throw DocumentError(field, e.what());
    }
  }
  const Index n = static_cast<Index>(doc.chain.stages.size());
  if (const auto it = j.find("V"); it != j.end())
    doc.V = decode_real_matrix(*it, 2 * n, 2 * n, "/V");
  if (const auto it = j.find("residual_R"); it != j.end())
    doc.chain.residual_R = decode_real_matrix(*it, 2 * n, 2 * n, "/residual_R");
  try {
    doc.chain.validate();
  } catch (const Error& e) {
    throw DocumentError("/stages", e.what());
  }
  if (const auto it = j.find("reports"); it != j.end() && it->is_object()) {
    try {
      if (const auto t = it->find("triangularity"); t != it->end())
        doc.triangularity = TriangularityReport{
            t->at("is_triangular").get<bool>(), t->at("max_upper_residual").get<double>(),
            t->at("tolerance").get<double>(), t->at("scale").get<double>()};
      if (const auto sy = it->find("symplectic"); sy != it->end())
        doc.symplectic = SymplecticReport{
            sy->at("ccr_residual").get<double>(), sy->at("orthogonality_residual").get<double>(),
            sy->at("tolerance").get<double>(), sy->at("verdict").get<bool>()};
      if (const auto e = it->find("equivalence"); e != it->end())
        doc.equivalence = EquivalenceReport{
            e->at("max_rel_mismatch").get<double>(), e->at("samples").get<std::size_t>(),
            e->at("verdict").get<bool>(), e->at("tolerance").get<double>(),
            e->at("seed").get<std::uint64_t>()};
    } catch (const json::exception& e) {
      throw DocumentError("/reports", e.what());
    }
  }
  return doc;
}

RealizationDocument read_realization_document(const std::filesystem::path& path) {
  return realization_document_from_json(parse_json(read_file(path)));
}

}  // namespace lqss::io
