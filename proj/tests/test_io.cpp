#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "cascade/io/commands.hpp"
#include "support/random_systems.hpp"
#include "support/worked_example.hpp"

using namespace lqss;
using namespace lqss::io;
using namespace lqss::testing;
namespace ex = lqss::testing::worked_example;
namespace fs = std::filesystem;

namespace {

fs::path data(const std::string& name) { return fs::path(CASCADE_TEST_DATA) / name; }

// Per-process scratch directory, removed when the test binary exits.
struct Scratch {
  fs::path root;
  Scratch() {
    root = fs::temp_directory_path() /
           ("cascade_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(root);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(root, ec);
  }
  fs::path file(const std::string& name) const { return root / name; }
};

const Scratch& scratch() {
  static const Scratch s;
  return s;
}

fs::path write_doc(const std::string& name, const SystemDocument& doc) {
  const fs::path p = scratch().file(name);
  write_file(p, to_json(doc).dump());
  return p;
}

fs::path write_text(const std::string& name, const std::string& text) {
  const fs::path p = scratch().file(name);
  write_file(p, text);
  return p;
}

SystemDocument passive_document(const PassiveForm& pf, const CMatrix& s) {
  SystemDocument doc;
  doc.form = Form::Passive;
  doc.n = pf.R_tilde.rows();
  doc.m = s.rows();
  doc.S = s;
  doc.K_tilde = pf.K_tilde;
  doc.R_tilde = pf.R_tilde;
  return doc;
}

std::string error_kind(const CommandResult& r) { return r.output.at("error").at("kind"); }

}  // namespace

TEST_CASE("system documents round-trip bit-exactly") {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const SystemDocument doc =
        general_document(random_system(rng, uniform_int(rng, 0, 4), uniform_int(rng, 1, 3)));
    const SystemDocument back = parse_system_document(to_json(doc).dump());
    CHECK(back == doc);
    CHECK(digest(back) == digest(doc));
    CHECK(canonical_dump(to_json(back)) == canonical_dump(to_json(doc)));
  }
  const SystemDocument passive =
      passive_document(random_passive_form(rng, 3, 2), random_unitary(rng, 2));
  CHECK(parse_system_document(to_json(passive).dump(2)) == passive);
}

TEST_CASE("digest is independent of formatting and key order") {
  const SystemDocument doc = read_system_document(data("example_general.json"));
  const json j = to_json(doc);
  CHECK(digest(parse_system_document(j.dump())) == digest(parse_system_document(j.dump(4))));
  CHECK(digest(doc).rfind("sha256:", 0) == 0);
  CHECK(digest(doc).size() == 7 + 64);
  SystemDocument other = doc;
  other.R(0, 0) += 1e-15;
  CHECK(digest(other) != digest(doc));
}

TEST_CASE("data files decode to the worked example") {
  const SlhSystem g = to_system(read_system_document(data("example_general.json")));
  CHECK(max_norm(g.coupling() - ex::k()) == 0.0);
  CHECK(max_norm(g.hamiltonian() - ex::r()) == 0.0);
  const SlhSystem p = to_system(read_system_document(data("example_passive.json")));
  CHECK(max_norm(p.coupling() - ex::k()) < 1e-12);
  CHECK(max_norm(p.hamiltonian() - ex::r()) < 1e-12);
}

TEST_CASE("malformed documents are reported with location") {
  SUBCASE("syntax error") {
    try {
      parse_system_document("{\n  \"n\": 1,\n  \"m\": ]\n}");
      FAIL("expected ParseError");
    } catch (const DocumentError& e) {
      CHECK(e.kind() == ErrorKind::ParseError);
      REQUIRE(e.line().has_value());
      CHECK(*e.line() == 3);
      CHECK(e.column().has_value());
    }
  }
  json base = to_json(read_system_document(data("example_general.json")));
  auto field_of = [](const json& j) {
    try {
      system_document_from_json(j);
    } catch (const DocumentError& e) {
      return e.field();
    }
    return std::string("<accepted>");
  };
  SUBCASE("complex R") {
    json j = base;
    j["R"][0][1] = json::array({0.0, 1.0});
    CHECK(field_of(j).rfind("/R", 0) == 0);
  }
  SUBCASE("wrong K shape") {
    json j = base;
    j["K"].erase(j["K"].begin());
    CHECK(field_of(j).rfind("/K", 0) == 0);
  }
  SUBCASE("missing key") {
    json j = base;
    j.erase("S");
    CHECK(field_of(j) == "/S");
  }
  SUBCASE("bad schema") {
    json j = base;
    j["schema_version"] = "2.0";
    CHECK(field_of(j) == "/schema_version");
  }
  SUBCASE("bad form") {
    json j = base;
    j["form"] = "other";
    CHECK(field_of(j) == "/form");
  }
  SUBCASE("non-Hermitian R_tilde") {
    json j = to_json(read_system_document(data("example_passive.json")));
    j["R_tilde"][0][1] = json::array({1.0, 2.0});
    CHECK(field_of(j) == "/R_tilde");
  }
}

TEST_CASE("realization documents round-trip") {
  Rng rng(42);
  const Index n = 4;
  CascadeChain chain = random_chain(rng, n, 2);
  RMatrix res = RMatrix::Zero(2 * n, 2 * n);
  res.block(0, 4, 2, 2) = random_real(rng, 2, 2);
  res.block(4, 0, 2, 2) = res.block(0, 4, 2, 2).transpose();
  chain.residual_R = res;
  RealizationDocument doc;
  doc.input_digest = "sha256:00";
  doc.chain = chain;
  doc.V = real_identity(2 * n);
  doc.triangularity = TriangularityReport{true, 0.0, 1e-9, 1.0};
  const json j = to_json(doc);
  const RealizationDocument back = realization_document_from_json(json::parse(j.dump()));
  CHECK(back.input_digest == doc.input_digest);
  CHECK(back.chain.stages.size() == chain.stages.size());
  CHECK(max_norm(cascade(back.chain).hamiltonian() - cascade(chain).hamiltonian()) == 0.0);
  CHECK(max_norm(cascade(back.chain).coupling() - cascade(chain).coupling()) == 0.0);
  REQUIRE(back.V.has_value());
  CHECK(to_json(back) == j);
}

TEST_CASE("parse_complex") {
  CHECK(parse_complex("1") == Complex(1, 0));
  CHECK(parse_complex("-2.5") == Complex(-2.5, 0));
  CHECK(parse_complex("3j") == Complex(0, 3));
  CHECK(parse_complex("j") == Complex(0, 1));
  CHECK(parse_complex("-j") == Complex(0, -1));
  CHECK(parse_complex("1-2j") == Complex(1, -2));
  CHECK(parse_complex("1e-3+4e2j") == Complex(1e-3, 4e2));
  CHECK(parse_complex(" 2+j ") == Complex(2, 1));
  CHECK_THROWS_AS(parse_complex("abc"), DocumentError);
  CHECK_THROWS_AS(parse_complex(""), DocumentError);
  const std::vector<Complex> pts = parse_points("1, 2+1j,-3j");
  CHECK(pts == std::vector<Complex>{{1, 0}, {2, 1}, {0, -3}});
}

TEST_CASE("check command") {
  CHECK(cmd_check(data("example_realized_printed.json"), 1e-4).exit_code == kExitOk);
  CHECK(cmd_check(data("example_realized_printed.json"), 1e-9).exit_code == kExitNegative);
  const CommandResult neg = cmd_check(data("example_general.json"), 1e-9);
  CHECK(neg.exit_code == kExitNegative);
  CHECK(neg.output.at("triangularity").at("max_upper_residual").get<double>() > 1.0);
  CHECK(cmd_check(data("single_mode.json"), 1e-9).exit_code == kExitOk);
  const CommandResult bad = cmd_check(write_text("bad.json", "{\"n\":"), 1e-9);
  CHECK(bad.exit_code == kExitInputError);
  CHECK(error_kind(bad) == "ParseError");
  CHECK(bad.output.at("error").contains("line"));
  CHECK(cmd_check(scratch().file("missing.json"), 1e-9).exit_code == kExitInputError);
}

TEST_CASE("decompose and cascade commands round-trip") {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const CascadeChain chain = random_chain(rng, uniform_int(rng, 1, 5), uniform_int(rng, 1, 3));
    const SlhSystem g = cascade(chain);
    const fs::path in = write_doc("chain.json", general_document(g));
    const fs::path out = scratch().file("chain_real.json");
    const CommandResult d = cmd_decompose(in, out, 1e-9);
    REQUIRE(d.exit_code == kExitOk);
    CHECK(d.output.at("written") == out.string());
    const RealizationDocument r = read_realization_document(out);
    CHECK(r.input_digest == digest(read_system_document(in)));
    const fs::path back = scratch().file("chain_back.json");
    REQUIRE(cmd_cascade(out, back).exit_code == kExitOk);
    const SlhSystem h = to_system(read_system_document(back));
    CHECK(max_norm(h.coupling() - g.coupling()) < 1e-10);
    CHECK(max_norm(h.hamiltonian() - g.hamiltonian()) < 1e-10);
  }
}

TEST_CASE("decompose suggests the passive route when it applies") {
  const CommandResult r = cmd_decompose(data("example_general.json"), std::nullopt, 1e-9);
  CHECK(r.exit_code == kExitNegative);
  CHECK(error_kind(r) == "NotCascadeRealizable");
  CHECK(r.output.at("suggestion") == "passive-realize");
  Rng rng(44);
  RMatrix rr = random_symmetric(rng, 4);
  const SlhSystem active(complex_identity(1), random_complex(rng, 1, 4), rr);
  const CommandResult a = cmd_decompose(write_doc("active2.json", general_document(active)),
                                        std::nullopt, 1e-9);
  CHECK(a.exit_code == kExitNegative);
  CHECK_FALSE(a.output.contains("suggestion"));
}

TEST_CASE("passive-realize command") {
  SUBCASE("worked example") {
    const fs::path out = scratch().file("example_real.json");
    const CommandResult r = cmd_passive_realize(data("example_passive.json"), out, {});
    REQUIRE(r.exit_code == kExitOk);
    CHECK(r.output.at("stages_passive") == true);
    const RealizationDocument doc = read_realization_document(out);
    REQUIRE(doc.chain.stages.size() == 2);
    std::vector<double> freq;
    for (const SlhSystem& g : doc.chain.stages) freq.push_back(g.hamiltonian()(0, 0));
    std::sort(freq.begin(), freq.end());
    CHECK(std::abs(freq[0] - 0.4588) < 1e-3);
    CHECK(std::abs(freq[1] - 0.7912) < 1e-3);
    REQUIRE(doc.V.has_value());
    CHECK(doc.equivalence->verdict);
    CHECK(doc.symplectic->verdict);
  }
  SUBCASE("uncoupled modes") {
    PassiveForm pf;
    pf.R_tilde = CMatrix::Zero(3, 3);
    pf.R_tilde.diagonal() << 2.0, -1.0, 5.0;
    pf.K_tilde = CMatrix::Zero(1, 3);
    const CommandResult r = cmd_passive_realize(
        write_doc("uncoupled.json", passive_document(pf, complex_identity(1))), std::nullopt, {});
    CHECK(r.exit_code == kExitOk);
    CHECK(r.output.at("stages").size() == 3);
  }
  SUBCASE("active input") {
    const CommandResult r = cmd_passive_realize(data("active.json"), std::nullopt, {});
    CHECK(r.exit_code == kExitPrecondition);
    CHECK(error_kind(r) == "NotPassive");
  }
  SUBCASE("batch of random passive documents") {
    Rng rng(45);
    for (int trial = 0; trial < 100; ++trial) {
      const Index n = uniform_int(rng, 1, 5);
      const Index m = uniform_int(rng, 1, 4);
      const PassiveForm pf = trial % 5 == 0 ? degenerate_passive_form(rng, n, m)
                                            : random_passive_form(rng, n, m);
      const fs::path in = write_doc("batch.json", passive_document(pf, random_unitary(rng, m)));
      PassiveRealizeOptions opts;
      opts.seed = static_cast<std::uint64_t>(trial);
      const CommandResult r = cmd_passive_realize(in, std::nullopt, opts);
      CHECK(r.exit_code == kExitOk);
      CHECK(r.output.at("reports").at("equivalence").at("verdict") == true);
    }
  }
}

TEST_CASE("tf command") {
  const CommandResult r = cmd_tf(data("single_mode.json"), {Complex(1, 0), Complex(2, 1)});
  REQUIRE(r.exit_code == kExitOk);
  REQUIRE(r.output.is_array());
  REQUIRE(r.output.size() == 2);
  const json& v = r.output[1].at("value");
  const Complex expected = Complex(0, 1) / Complex(4, 1);
  CHECK(std::abs(v[0][0][0].get<double>() - expected.real()) < 1e-14);
  CHECK(std::abs(v[0][0][1].get<double>() - expected.imag()) < 1e-14);
  const CommandResult pole = cmd_tf(data("single_mode.json"), {Complex(-2, 0)});
  CHECK(pole.exit_code == kExitNumeric);
  CHECK(error_kind(pole) == "ResolventSingular");
}

TEST_CASE("verify command") {
  CHECK(cmd_verify(data("example_general.json"), data("example_passive.json"), 20, 1e-8, 0)
            .exit_code == kExitOk);
  CHECK(cmd_verify(data("example_general.json"), data("example_realized_printed.json"), 20,
                   1e-8, 0)
            .exit_code == kExitNegative);
  CHECK(cmd_verify(data("example_general.json"), data("example_realized_printed.json"), 20,
                   4e-4, 0)
            .exit_code == kExitOk);
  const CommandResult dim =
      cmd_verify(data("example_general.json"), data("single_mode.json"), 20, 1e-8, 0);
  CHECK(dim.exit_code == kExitPrecondition);
}

TEST_CASE("tolerance environment override") {
  ::unsetenv("CASCADE_SYNTH_TOL");
  CHECK(default_tolerance() == kDefaultTolerance);
  ::setenv("CASCADE_SYNTH_TOL", "1e-4", 1);
  CHECK(default_tolerance() == 1e-4);
  ::setenv("CASCADE_SYNTH_TOL", "nope", 1);
  CHECK_THROWS_AS(default_tolerance(), DocumentError);
  ::unsetenv("CASCADE_SYNTH_TOL");
}
