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

#ifndef HAMCLASS_REPORT_HPP
#define HAMCLASS_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "hamclass/classifier.hpp"
#include "hamclass/instance.hpp"

namespace hamclass {

inline constexpr const char* kToolVersion = "hamclass 0.1.0";

// All report numbers are serialized as decimal strings with 12 significant
// digits so reports are byte-identical across runs.
std::string sig12(double value);

std::string fnv1a_digest(const std::string& bytes);

struct Report {
  std::string command;
  std::string inputs_digest;
  nlohmann::json results;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

nlohmann::json rotation_to_json(const LocalRotation& rot);
nlohmann::json table_to_json(const PauliTable& table);
nlohmann::json classification_to_json(const Classification& c);

}  // namespace hamclass

#endif  // HAMCLASS_REPORT_HPP
