// Copyright 2026 The hamclass authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hamclass/cli.hpp"
#include "hamclass/report.hpp"
#include "test_helpers.hpp"

using namespace hamclass;
using namespace hamclass::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("hamclass_test_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }
};

const char* kHeisenbergSet = R"({"interactions": {
  "heis": {"arity": 2, "pauli": {"XX": "1", "YY": "1", "ZZ": "1"}}}})";

const char* kZZSet = R"({"interactions": {
  "zz": {"arity": 2, "pauli": {"ZZ": "1"}}}})";

const char* kLogical2 = R"({
  "n": 2,
  "interactions": {
    "X": {"arity": 1, "pauli": {"X": "1"}},
    "Z": {"arity": 1, "pauli": {"Z": "1"}},
    "XX": {"arity": 2, "pauli": {"XX": "1"}},
    "ZZ": {"arity": 2, "pauli": {"ZZ": "1"}}
  },
  "terms": [
    {"id": "X", "qubits": [0], "weight": "1"},
    {"id": "Z", "qubits": [1], "weight": "0.5"},
    {"id": "ZZ", "qubits": [0, 1], "weight": "1.5"},
    {"id": "XX", "qubits": [0, 1], "weight": "-0.5"}
  ]
})";

}  // namespace

TEST_CASE("cli classify") {
  TempDir dir;
  const std::string heis = dir.file("heis.json", kHeisenbergSet);
  const std::string zz = dir.file("zz.json", kZZSet);

  CliResult r = run_cli({"classify", heis, "--mode", "bare", "--quiet"});
  CHECK(r.exit_code == kExitOk);
  CHECK(r.output == "QMA_COMPLETE\n");

  r = run_cli({"classify", zz, "--mode", "bare", "--quiet"});
  CHECK(r.output == "NP_COMPLETE\n");

  r = run_cli({"classify", zz, "--mode", "with-local-terms", "--quiet"});
  CHECK(r.output == "TIM_COMPLETE\n");

  // Full reports are deterministic across runs.
  const CliResult a = run_cli({"classify", heis, "--mode", "bare"});
  const CliResult b = run_cli({"classify", heis, "--mode", "bare"});
  CHECK(a.output == b.output);
  CHECK(a.output.find("\"label\": \"QMA_COMPLETE\"") != std::string::npos);

  const std::string bad = dir.file("bad.json", "{nope");
  CHECK(run_cli({"classify", bad}).exit_code == kExitParse);

  const std::string big = dir.file("big.json", R"({"interactions": {
    "zzz": {"arity": 3, "pauli": {"ZZZ": "1"}}}})");
  CHECK(run_cli({"classify", big, "--mode", "bare"}).exit_code == kExitArity);
  CHECK(run_cli({"classify", big, "--mode", "with-local-terms", "--quiet"}).output ==
        "TIM_COMPLETE\n");
}

TEST_CASE("cli spectrum") {
  TempDir dir;
  const std::string inst = dir.file("tri.json", R"({
    "n": 3,
    "interactions": {"heis": {"arity": 2, "pauli": {"XX": "1", "YY": "1", "ZZ": "1"}}},
    "terms": [
      {"id": "heis", "qubits": [0, 1], "weight": "1"},
      {"id": "heis", "qubits": [1, 2], "weight": "1"},
      {"id": "heis", "qubits": [0, 2], "weight": "1"}
    ]
  })");
  const CliResult r = run_cli({"spectrum", inst, "--k", "2", "--quiet"});
  CHECK(r.exit_code == kExitOk);
  CHECK(r.output == "-3\n-3\n");

  // Numeric-stage failures exit with code 6.
  const std::string invalid = dir.file("dup.json", R"({
    "n": 2,
    "interactions": {"ZZ": {"arity": 2, "pauli": {"ZZ": "1"}}},
    "terms": [{"id": "ZZ", "qubits": [0, 0], "weight": "1"}]
  })");
  CHECK(run_cli({"spectrum", invalid}).exit_code == kExitNumeric);
}

TEST_CASE("cli oracle") {
  CliResult r = run_cli({"oracle", "lieb-mattis", "2"});
  CHECK(r.exit_code == kExitOk);
  CHECK(r.output.find("\"ground_energy\": \"-8\"") != std::string::npos);
  CHECK(r.output.find("\"cross_swap_expectation\": \"-0.5\"") != std::string::npos);
  CHECK(r.output.find("inconsistent") != std::string::npos);

  r = run_cli({"oracle", "xy-sector", "4", "2", "--quiet"});
  CHECK(r.output == "8\n");

  r = run_cli({"oracle", "complete-heisenberg", "2", "--quiet"});
  CHECK(r.output == "1\n-3\n");
}

TEST_CASE("cli compile and verify round trip") {
  TempDir dir;
  const std::string logical = dir.file("logical.json", kLogical2);
  const std::string prefix = (dir.path / "out").string();
  CliResult r = run_cli({"compile", logical, "--encoding", "heisenberg", "--delta", "16",
                         "-o", prefix});
  CHECK(r.exit_code == kExitOk);
  CHECK(fs::exists(prefix + ".instance.json"));
  CHECK(fs::exists(prefix + ".plan.json"));

  r = run_cli({"verify-gadget", prefix + ".instance.json", prefix + ".plan.json"});
  CHECK(r.exit_code == kExitOk);
  CHECK(r.output.find("\"pass\": true") != std::string::npos);

  // Unsupported logical content exits with code 4.
  const std::string yy = dir.file("yy.json", R"({
    "n": 2,
    "interactions": {"YY": {"arity": 2, "pauli": {"YY": "1"}}},
    "terms": [{"id": "YY", "qubits": [0, 1], "weight": "1"}]
  })");
  CHECK(run_cli({"compile", yy, "--encoding", "heisenberg"}).exit_code == kExitUnsupported);

  // Empty logical instance compiles to a plan with no coupler terms.
  const std::string empty = dir.file("empty.json", R"({
    "n": 2,
    "interactions": {"ZZ": {"arity": 2, "pauli": {"ZZ": "1"}}},
    "terms": []
  })");
  const std::string eprefix = (dir.path / "empty_out").string();
  CHECK(run_cli({"compile", empty, "--encoding", "heisenberg", "-o", eprefix}).exit_code ==
        kExitOk);
}

TEST_CASE("cli verify pin blueprint and the mis-scaled negative control") {
  TempDir dir;
  // Pinning-bound demo: V = X on one qubit, heavy = |1><1|.
  HamiltonianInstance v;
  v.n = 1;
  v.add_interaction("X", PauliTable::from_terms(1, {{"X", 1.0}}));
  v.add_term("X", {0}, 1.0);
  HamiltonianInstance heavy;
  heavy.n = 1;
  heavy.add_interaction("P1", PauliTable::from_terms(1, {{"I", 0.5}, {"Z", -0.5}}));
  heavy.add_term("P1", {0}, 1.0);

  const double delta = 64.0;
  const GadgetStep step = pin_subspace(v, heavy, delta);
  const HamiltonianInstance physical = apply_step(v, step);
  const std::string inst_file = dir.file("pin.instance.json", write_instance(physical));

  GadgetPlan plan;
  plan.kind = GadgetKind::PinSubspace;
  plan.steps = {step};
  plan.physical = physical;
  plan.total_qubits = 1;
  plan.composed_error = step.predicted_error;
  const std::string plan_file =
      dir.file("pin.plan.json", plan_sidecar(plan, pin_blueprint(v, heavy, delta)).dump(2));

  CliResult r = run_cli({"verify-gadget", inst_file, plan_file});
  CHECK(r.exit_code == kExitOk);
  CHECK(r.output.find("\"pass\": true") != std::string::npos);
  // 41/64 appears as the bound.
  CHECK(r.output.find("0.640625") != std::string::npos);

  // Negative control: the physical file carries a heavy term 100x too weak.
  HamiltonianInstance weak = v;
  for (PlacedTerm t : step.added_terms) {
    t.weight /= 100.0;
    t.weight_str = decimal_string(t.weight);
    weak.terms.push_back(t);
  }
  for (const auto& [name, inter] : step.added_interactions)
    weak.interactions.emplace(name, inter);
  const std::string weak_file = dir.file("weak.instance.json", write_instance(weak));
  r = run_cli({"verify-gadget", weak_file, plan_file});
  CHECK(r.exit_code == kExitBound);
}

TEST_CASE("cli verify mediator sweep reports the decay slope") {
  TempDir dir;
  HamiltonianInstance h_else;
  h_else.n = 2;
  h_else.add_interaction("z", PauliTable::from_terms(1, {{"Z", 1.0}}));
  h_else.add_term("z", {0}, 0.31);
  h_else.add_term("z", {1}, -0.2);

  MediatorSpec spec;
  spec.h1 = spec.h2 = table2({{"XX", 1.0}, {"ZZ", 0.7}});
  spec.psi = Eigen::Vector2cd(0, 1);
  spec.a = 0;
  spec.b = 2;
  spec.c = 1;
  spec.delta = 100.0;
  const GadgetStep step = mediator_gadget(h_else, spec);
  const HamiltonianInstance physical = apply_step(h_else, step);

  GadgetPlan plan;
  plan.kind = GadgetKind::Mediator;
  plan.steps = {step};
  plan.physical = physical;
  plan.total_qubits = 3;
  plan.composed_error = step.predicted_error;

  const std::string inst_file = dir.file("med.instance.json", write_instance(physical));
  const std::string plan_file =
      dir.file("med.plan.json", plan_sidecar(plan, mediator_blueprint(h_else, spec)).dump(2));

  const CliResult r =
      run_cli({"verify-gadget", inst_file, plan_file, "--delta-sweep", "25,50,100,200"});
  CHECK(r.exit_code == kExitOk);
  const auto pos = r.output.find("\"loglog_slope\": \"");
  REQUIRE(pos != std::string::npos);
  const double slope = std::strtod(r.output.c_str() + pos + 17, nullptr);
  CHECK(slope <= -0.9);
}
