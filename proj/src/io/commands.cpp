#include "cascade/io/commands.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace lqss::io {

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::NonUnitaryScattering:
    case ErrorKind::NonSymmetricR:
    case ErrorKind::NonHermitianRtilde:
    case ErrorKind::NonFinite:
    case ErrorKind::BadResidual:
      return kExitInputError;
    case ErrorKind::NotCascadeRealizable:
      return kExitNegative;
    case ErrorKind::NotPassive:
    case ErrorKind::FieldCountMismatch:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::ScatteringMismatch:
    case ErrorKind::NonUnitaryInput:
    case ErrorKind::OddDimension:
      return kExitPrecondition;
    case ErrorKind::ConvergenceFailure:
    case ErrorKind::ResolventSingular:
      return kExitNumeric;
  }
  return kExitInputError;
}

double parse_double(std::string_view text, std::string_view whole) {
  double value = 0.0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw DocumentError("--points", "malformed complex literal \"" + std::string(whole) + "\"");
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Imaginary coefficient text such as "", "+", "-", "2.5", "-1e3".
double parse_imag(std::string_view text, std::string_view whole) {
  if (text.empty() || text == "+") return 1.0;
  if (text == "-") return -1.0;
  return parse_double(text, whole);
}

void emit(const json& doc, const std::optional<std::filesystem::path>& out, CommandResult& result,
          json summary) {
  if (out) {
    write_file(*out, doc.dump(2) + "\n");
    summary["written"] = out->string();
    result.output = std::move(summary);
  } else {
    result.output = doc;
  }
}

}  // namespace

double default_tolerance(double fallback) {
  const char* env = std::getenv("CASCADE_SYNTH_TOL");
  if (env == nullptr || *env == '\0') return fallback;
  double value = 0.0;
  const std::string_view text(env);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(value > 0.0))
    throw DocumentError("CASCADE_SYNTH_TOL", "expected a positive number, got \"" +
                                                 std::string(text) + "\"");
  return value;
}

Complex parse_complex(std::string_view raw) {
  const std::string_view text = trim(raw);
  if (text.empty()) throw DocumentError("--points", "empty complex literal");
  const char last = text.back();
  if (last != 'j' && last != 'i') return {parse_double(text, raw), 0.0};

  const std::string_view body = text.substr(0, text.size() - 1);
  // The real/imaginary split is the last sign that is not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imag(body, raw)};
  return {parse_double(body.substr(0, split), raw), parse_imag(body.substr(split), raw)};
}

std::vector<Complex> parse_points(std::string_view text) {
  std::vector<Complex> points;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    points.push_back(parse_complex(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return points;
}

CommandResult error_result(const Error& e) {
  json err = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
  if (const auto* doc = dynamic_cast<const DocumentError*>(&e)) {
    if (!doc->field().empty()) err["field"] = doc->field();
    if (doc->line()) err["line"] = *doc->line();
    if (doc->column()) err["column"] = *doc->column();
  }
  json out = {{"error", std::move(err)}};
  if (const auto* nc = dynamic_cast<const NotCascadeRealizableError*>(&e))
    out["triangularity"] = to_json(nc->report());
  return {exit_code_for(e.kind()), std::move(out)};
}

CommandResult cmd_check(const std::filesystem::path& path, double tol) {
  try {
    const SlhSystem sys = to_system(read_system_document(path));
    const TriangularityReport report = is_cascade_realizable(sys, tol);
    return {report.is_triangular ? kExitOk : kExitNegative,
            {{"triangularity", to_json(report)}, {"n", sys.modes()}, {"m", sys.fields()}}};
  } catch (const Error& e) {
    return error_result(e);
  }
}

CommandResult cmd_decompose(const std::filesystem::path& path,
                            const std::optional<std::filesystem::path>& out, double tol) {
  try {
    const SystemDocument input = read_system_document(path);
    const SlhSystem sys = to_system(input);
    try {
      RealizationDocument doc;
      doc.chain = decompose_cascade(sys, tol);
      doc.input_digest = digest(input);
      doc.triangularity = is_cascade_realizable(sys, tol);
      CommandResult result;
      emit(to_json(doc), out, result,
           {{"triangularity", to_json(*doc.triangularity)},
            {"stages", doc.chain.modes()},
            {"input_digest", doc.input_digest}});
      return result;
    } catch (const NotCascadeRealizableError& e) {
      CommandResult result = error_result(e);
      if (is_passive(sys)) result.output["suggestion"] = "passive-realize";
      return result;
    }
  } catch (const Error& e) {
    return error_result(e);
  }
}

CommandResult cmd_passive_realize(const std::filesystem::path& path,
                                  const std::optional<std::filesystem::path>& out,
                                  const PassiveRealizeOptions& opts) {
  try {
    const SystemDocument input = read_system_document(path);
    const SlhSystem sys = to_system(input);
    PassiveOptions popts;
    popts.triangular_tol = opts.triangular_tol;
    const PassiveRealization real = passive_realize(sys, popts);

    RealizationDocument doc;
    doc.input_digest = digest(input);
    doc.V = real.transform.V;
    doc.chain = real.chain;
    doc.triangularity = real.triangularity;
    SymplecticReport symp;
    symp.ccr_residual = ccr_preservation(real.transform);
    symp.orthogonality_residual = orthogonality_residual(real.transform.V);
    symp.tolerance = kDefaultTolerance;
    symp.verdict = symp.ccr_residual <= symp.tolerance &&
                   symp.orthogonality_residual <= symp.tolerance;
    doc.symplectic = symp;
    doc.equivalence =
        certify_equivalence(sys, real.realized, opts.samples, opts.equivalence_tol, opts.seed);

    const bool ok = real.triangularity.is_triangular && symp.verdict &&
                    doc.equivalence->verdict && real.stages_passive;
    json summary = {{"triangularity", to_json(*doc.triangularity)},
                    {"symplectic", to_json(symp)},
                    {"equivalence", to_json(*doc.equivalence)},
                    {"stages_passive", real.stages_passive},
                    {"stages", doc.chain.modes()},
                    {"input_digest", doc.input_digest}};
    CommandResult result;
    json rendered = to_json(doc);
    rendered["reports"]["stages_passive"] = real.stages_passive;
    emit(rendered, out, result, std::move(summary));
    result.exit_code = ok ? kExitOk : kExitNumeric;
    return result;
  } catch (const Error& e) {
    return error_result(e);
  }
}

CommandResult cmd_tf(const std::filesystem::path& path, const std::vector<Complex>& points) {
  try {
    const SlhSystem sys = to_system(read_system_document(path));
    const DoubledStateSpace ss = build_state_space(sys);
    json samples = json::array();
    for (const Complex& s : points) {
      const TransferSample sample = transfer_function(ss, s);
      samples.push_back({{"s", encode(sample.s)}, {"value", encode(sample.value)}});
    }
    return {kExitOk, std::move(samples)};
  } catch (const Error& e) {
    return error_result(e);
  }
}

CommandResult cmd_verify(const std::filesystem::path& a, const std::filesystem::path& b,
                         std::size_t samples, double tol, std::uint64_t seed) {
  try {
    const SlhSystem ga = to_system(read_system_document(a));
    const SlhSystem gb = to_system(read_system_document(b));
    const EquivalenceReport report = certify_equivalence(ga, gb, samples, tol, seed);
    return {report.verdict ? kExitOk : kExitNegative, {{"equivalence", to_json(report)}}};
  } catch (const Error& e) {
    return error_result(e);
  }
}

CommandResult cmd_cascade(const std::filesystem::path& path,
                          const std::optional<std::filesystem::path>& out) {
  try {
    const RealizationDocument doc = read_realization_document(path);
    const SystemDocument system = general_document(cascade(doc.chain));
    CommandResult result;
    emit(to_json(system), out, result, {{"n", system.n}, {"m", system.m}});
    return result;
  } catch (const Error& e) {
    return error_result(e);
  }
}

}  // namespace lqss::io
