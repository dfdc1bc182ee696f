#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cascade/passive_synthesis.hpp"
#include "cascade/verification.hpp"

namespace lqss::io {

using nlohmann::json;

inline constexpr std::string_view kSchemaVersion = "1.0";

/// Malformed or inconsistent input document. `field` is a JSON pointer to the
/// offending value; line/column are set for syntax errors.
class DocumentError : public Error {
 public:
  DocumentError(std::string field, const std::string& message,
                std::optional<std::size_t> line = std::nullopt,
                std::optional<std::size_t> column = std::nullopt);

  const std::string& field() const noexcept { return field_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  std::optional<std::size_t> column() const noexcept { return column_; }

 private:
  std::string field_;
  std::optional<std::size_t> line_;
  std::optional<std::size_t> column_;
};

enum class Form { General, Passive };

/// On-disk description of a system, either by (K, R) or by (K_tilde, R_tilde).
/// Complex scalars are [re, im] pairs; R is a plain real matrix.
struct SystemDocument {
  std::string schema_version{kSchemaVersion};
  Form form = Form::General;
  Index n = 0;
  Index m = 0;
  CMatrix S;
  CMatrix K;
  RMatrix R;
  CMatrix K_tilde;
  CMatrix R_tilde;

};

/// Structural equality: same form, shapes and bit-identical entries.
bool operator==(const SystemDocument& a, const SystemDocument& b);

json encode(const CMatrix& m);
json encode(const RMatrix& m);
json encode(Complex z);
CMatrix decode_complex_matrix(const json& j, Index rows, Index cols, const std::string& field);
RMatrix decode_real_matrix(const json& j, Index rows, Index cols, const std::string& field);

json to_json(const SystemDocument& doc);
SystemDocument system_document_from_json(const json& j);
/// Parses text, reporting syntax errors with line and column.
SystemDocument parse_system_document(std::string_view text);
SystemDocument read_system_document(const std::filesystem::path& path);

/// Builds the model system; passive documents go through from_passive_form.
SlhSystem to_system(const SystemDocument& doc, const Tolerances& tol = {});
SystemDocument general_document(const SlhSystem& sys);

/// Deterministic serialization: sorted keys, no whitespace, shortest
/// round-trip decimals.
std::string canonical_dump(const json& j);
/// "sha256:<hex>" of the canonical serialization.
std::string digest(const SystemDocument& doc);

struct SymplecticReport {
  double ccr_residual = 0.0;
  double orthogonality_residual = 0.0;
  double tolerance = 0.0;
  bool verdict = false;
};

/// Output of decompose / passive-realize.
struct RealizationDocument {
  std::string schema_version{kSchemaVersion};
  std::string input_digest;
  std::optional<RMatrix> V;
  CascadeChain chain;
  std::optional<TriangularityReport> triangularity;
  std::optional<SymplecticReport> symplectic;
  std::optional<EquivalenceReport> equivalence;
};

json to_json(const TriangularityReport& r);
json to_json(const EquivalenceReport& r);
json to_json(const SymplecticReport& r);
json to_json(const RealizationDocument& doc);
RealizationDocument realization_document_from_json(const json& j);
RealizationDocument read_realization_document(const std::filesystem::path& path);

/// Reads a whole file; DocumentError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace lqss::io
