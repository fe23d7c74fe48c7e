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

#include "hamclass/classifier.hpp"

namespace hamclass {

const char* label_name(Label label) {
  switch (label) {
    case Label::P: return "P";
    case Label::NpComplete: return "NP_COMPLETE";
    case Label::TimComplete: return "TIM_COMPLETE";
    case Label::QmaComplete: return "QMA_COMPLETE";
  }
  return "?";
}

const char* rule_name(Rule rule) {
  switch (rule) {
    case Rule::AllLocal: return "all_1_local";
    case Rule::StrippedEmpty: return "stripped_empty";
    case Rule::CommonDiagonalizer: return "common_diagonalizer";
    case Rule::TimAxis: return "tim_axis";
    case Rule::Generic: return "generic";
  }
  return "?";
}

namespace {

// Per-element normalization keeps the rank/diagonality thresholds scale-free.
std::vector<PauliTable> normalized_nonzero(std::span<const PauliTable> set,
                                           std::vector<std::string>& warnings) {
  std::vector<PauliTable> out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    PauliTable t = set[i];
    const double scale = t.max_abs_coeff();
    if (scale == 0.0) {
      warnings.push_back("element " + std::to_string(i) + " is zero and was dropped");
      continue;
    }
    t *= 1.0 / scale;
    out.push_back(std::move(t));
  }
  return out;
}

PauliTable two_local_part(const PauliTable& t) {
  PauliTable out(t.qubits());
  for (const auto& [code, c] : t.coeffs())
    if (pauli_weight(code, t.qubits()) == 2) out.add(code, c);
  return out;
}

bool two_local_part_vanishes(const PauliTable& t) {
  for (const auto& [code, c] : t.coeffs())
    if (pauli_weight(code, t.qubits()) >= 2 && std::abs(c) > kRankTol) return false;
  return true;
}

std::vector<ElementNormalForms> element_normal_forms(const std::vector<PauliTable>& elements) {
  std::vector<ElementNormalForms> forms;
  for (const PauliTable& t : elements) {
    ElementNormalForms f;
    if (t.qubits() == 2) {
      const auto [plus, minus] = swap_symmetrize(t);
      if (!plus.empty()) f.symmetric = normal_form_symmetric(plus);
      if (!minus.empty()) f.antisymmetric = normal_form_antisymmetric(minus);
    }
    forms.push_back(std::move(f));
  }
  return forms;
}

// 2-local part of the conjugated table must be proportional to ZZ.
bool verify_tim_form(const PauliTable& t, const LocalRotation& rot) {
  const PauliTable conj = conjugate_local(t, rot);
  for (const auto& [code, c] : conj.coeffs()) {
    if (pauli_weight(code, conj.qubits()) < 2 || std::abs(c) <= 1e-9) continue;
    if (code != pauli_pack("ZZ")) return false;
  }
  return true;
}

}  // namespace

std::vector<PauliTable> strip_local_parts(std::span<const PauliTable> set) {
  std::vector<PauliTable> out;
  for (const PauliTable& t : set) {
    PauliTable stripped(t.qubits());
    for (const auto& [code, c] : t.coeffs())
      if (pauli_weight(code, t.qubits()) >= 2) stripped.add(code, c);
    if (!stripped.empty()) out.push_back(std::move(stripped));
  }
  return out;
}

Classification classify_with_local_terms(std::span<const PauliTable> set) {
  Classification result;
  const std::vector<PauliTable> elements = normalized_nonzero(set, result.warnings);
  result.witness.normal_forms = element_normal_forms(elements);
  const std::vector<PauliTable> stripped = strip_local_parts(elements);
  result.witness.stripped_set = stripped;

  if (stripped.empty()) {
    result.label = Label::P;
    result.witness.rule_fired = Rule::StrippedEmpty;
    return result;
  }
  if (auto rot = common_diagonalizer(stripped)) {
    for (const PauliTable& t : stripped)
      if (!table_is_diagonal(conjugate_local(t, *rot), 1e-9))
        fail(Errc::Internal, "diagonalizer witness failed re-verification");
    result.label = Label::TimComplete;
    result.witness.rule_fired = Rule::CommonDiagonalizer;
    result.witness.rotation = rot;
    return result;
  }
  result.label = Label::QmaComplete;
  result.witness.rule_fired = Rule::Generic;
  return result;
}

Classification classify_bare(std::span<const PauliTable> set) {
  for (const PauliTable& t : set)
    if (t.qubits() > 2)
      fail(Errc::ArityTooLarge, "the bare classifier covers interactions on at most 2 qubits");

  Classification result;
  const std::vector<PauliTable> elements = normalized_nonzero(set, result.warnings);
  result.witness.normal_forms = element_normal_forms(elements);

  bool all_local = true;
  for (const PauliTable& t : elements)
    if (!two_local_part_vanishes(t)) all_local = false;
  if (all_local) {
    result.label = Label::P;
    result.witness.rule_fired = Rule::AllLocal;
    return result;
  }

  if (auto rot = common_diagonalizer(elements)) {
    result.label = Label::NpComplete;
    result.witness.rule_fired = Rule::CommonDiagonalizer;
    result.witness.rotation = rot;
    return result;
  }

  // The TIM bullet quantifies over 2-qubit elements only; 1-qubit elements do
  // not constrain the axis.
  std::vector<PauliTable> two_local;
  bool rank_ok = true;
  for (const PauliTable& t : elements) {
    if (t.qubits() != 2) continue;
    if (pauli_rank(t) >= 2) {
      rank_ok = false;
      break;
    }
    two_local.push_back(two_local_part(t));
  }
  if (rank_ok) {
    if (auto rot = tim_axis_test(two_local)) {
      for (const PauliTable& t : elements)
        if (t.qubits() == 2 && !verify_tim_form(t, *rot))
          fail(Errc::Internal, "TIM-axis witness failed re-verification");
      result.label = Label::TimComplete;
      result.witness.rule_fired = Rule::TimAxis;
      result.witness.rotation = rot;
      return result;
    }
  }

  result.label = Label::QmaComplete;
  result.witness.rule_fired = Rule::Generic;
  return result;
}

}  // namespace hamclass
