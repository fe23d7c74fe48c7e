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

#ifndef HAMCLASS_CLASSIFIER_HPP
#define HAMCLASS_CLASSIFIER_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hamclass/rotation.hpp"

namespace hamclass {

enum class Label { P, NpComplete, TimComplete, QmaComplete };
const char* label_name(Label label);

enum class Rule {
  AllLocal,            // every element is (effectively) 1-local
  StrippedEmpty,       // stripping 1-local parts leaves nothing
  CommonDiagonalizer,  // one U locally diagonalizes everything
  TimAxis,             // all 2-local parts share a product axis
  Generic,             // none of the easy cases fired
};
const char* rule_name(Rule rule);

// Normal forms of an element's swap-symmetric and swap-antisymmetric parts,
// recorded for 2-qubit elements so a classification can be replayed.
struct ElementNormalForms {
  std::optional<SymmetricNormalForm> symmetric;
  std::optional<AntisymmetricNormalForm> antisymmetric;
};

struct Witness {
  Rule rule_fired = Rule::Generic;
  std::optional<LocalRotation> rotation;
  std::vector<ElementNormalForms> normal_forms;  // one per nonzero element
  std::vector<PauliTable> stripped_set;          // the S' of the with-local-terms mode
};

struct Classification {
  Label label = Label::QmaComplete;
  Witness witness;
  std::vector<std::string> warnings;
};

// Zeroes every coefficient of Pauli weight <= 1 and drops elements that become
// zero entirely.
std::vector<PauliTable> strip_local_parts(std::span<const PauliTable> set);

Classification classify_with_local_terms(std::span<const PauliTable> set);
Classification classify_bare(std::span<const PauliTable> set);

}  // namespace hamclass

#endif  // HAMCLASS_CLASSIFIER_HPP
