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

#include "hamclass/report.hpp"

#include <cstdio>

namespace hamclass {

using nlohmann::json;

std::string sig12(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json Report::to_json() const {
  json doc;
  doc["command"] = command;
  doc["inputs_digest"] = inputs_digest;
  doc["results"] = results;
  doc["warnings"] = warnings;
  doc["tool_version"] = kToolVersion;
  return doc;
}

json rotation_to_json(const LocalRotation& rot) {
  json u = json::array();
  for (int i = 0; i < 2; ++i) {
    json row = json::array();
    for (int j = 0; j < 2; ++j)
      row.push_back({sig12(rot.u(i, j).real()), sig12(rot.u(i, j).imag())});
    u.push_back(row);
  }
  json r = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int j = 0; j < 3; ++j) row.push_back(sig12(rot.r(i, j)));
    r.push_back(row);
  }
  return {{"su2", u}, {"so3", r}};
}

json table_to_json(const PauliTable& table) {
  json out = json::object();
  for (const auto& [code, c] : table.coeffs())
    out[pauli_unpack(code, table.qubits())] = sig12(c);
  return out;
}

json classification_to_json(const Classification& c) {
  json out;
  out["label"] = label_name(c.label);
  json witness;
  witness["rule_fired"] = rule_name(c.witness.rule_fired);
  if (c.witness.rotation) witness["rotation"] = rotation_to_json(*c.witness.rotation);
  json forms = json::array();
  for (const ElementNormalForms& f : c.witness.normal_forms) {
    json jf = json::object();
    if (f.symmetric) {
      jf["symmetric"] = {{"alpha",
                          {sig12(f.symmetric->alpha(0)), sig12(f.symmetric->alpha(1)),
                           sig12(f.symmetric->alpha(2))}},
                         {"beta",
                          {sig12(f.symmetric->beta(0)), sig12(f.symmetric->beta(1)),
                           sig12(f.symmetric->beta(2))}}};
    }
    if (f.antisymmetric) {
      jf["antisymmetric"] = {{"alpha", sig12(f.antisymmetric->alpha)},
                             {"beta",
                              {sig12(f.antisymmetric->beta(0)), sig12(f.antisymmetric->beta(1)),
                               sig12(f.antisymmetric->beta(2))}}};
    }
    forms.push_back(jf);
  }
  witness["normal_forms"] = forms;
  json stripped = json::array();
  for (const PauliTable& t : c.witness.stripped_set) stripped.push_back(table_to_json(t));
  witness["stripped_set"] = stripped;
  out["witness"] = witness;
  return out;
}

}  // namespace hamclass
