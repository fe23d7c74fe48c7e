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

#ifndef HAMCLASS_INSTANCE_HPP
#define HAMCLASS_INSTANCE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hamclass/pauli.hpp"

namespace hamclass {

// Largest dimension for which operators are materialized densely.
inline constexpr Eigen::Index kDenseMax = Eigen::Index(1) << 14;
inline constexpr double kWeightMax = 1e6;

struct Interaction {
  std::string name;
  PauliTable table;
  Matrix dense;

  Interaction(std::string name_, PauliTable table_)
      : name(std::move(name_)), table(std::move(table_)), dense(dense_from_pauli(table)) {}
  int arity() const { return table.qubits(); }
};

using Catalog = std::map<std::string, Interaction>;

struct PlacedTerm {
  std::string interaction_id;
  std::vector<int> qubits;  // ordered, distinct; orientation is significant
  double weight = 0.0;
  std::string weight_str;   // decimal form, preserved verbatim on round-trips
};

struct Thresholds {
  double a = 0.0, b = 0.0;
  std::string a_str, b_str;
};

struct HamiltonianInstance {
  int n = 0;
  Catalog interactions;
  std::vector<PlacedTerm> terms;
  std::optional<Thresholds> thresholds;

  void add_interaction(const std::string& name, PauliTable table);
  void add_term(const std::string& id, std::vector<int> qubits, double weight);
};

PlacedTerm make_term(const std::string& id, std::vector<int> qubits, double weight);

std::vector<std::string> validate(const HamiltonianInstance& inst);

// Weighted sum of the placed interactions, identity elsewhere. Immutable, with
// a thread-safe lazily built dense form for dimensions up to kDenseMax.
class AssembledOperator {
 public:
  struct Term {
    Matrix op;                  // weight folded in
    std::vector<int> qubits;
  };

  AssembledOperator(int n, std::vector<Term> terms);

  int qubits() const { return n_; }
  Eigen::Index dim() const { return Eigen::Index(1) << n_; }

  void apply(const Vector& x, Vector& y) const;  // y = H x
  Vector apply(const Vector& x) const;
  const Matrix& dense() const;
  bool dense_available() const { return dim() <= kDenseMax; }
  double norm_upper_bound() const;  // sum of term spectral norms

 private:
  int n_;
  std::vector<Term> terms_;
  mutable std::shared_ptr<Matrix> dense_cache_;
  mutable std::shared_ptr<std::mutex> mutex_;
};

AssembledOperator assemble(const HamiltonianInstance& inst);

HamiltonianInstance read_instance(const std::string& json_text);
HamiltonianInstance read_instance_file(const std::string& path);
std::string write_instance(const HamiltonianInstance& inst);
void write_instance_file(const HamiltonianInstance& inst, const std::string& path);

// Interaction-set document: the catalog part of the instance schema.
Catalog read_interaction_set(const std::string& json_text);
std::string write_interaction_set(const Catalog& catalog);

// Shortest decimal string that round-trips the double.
std::string decimal_string(double value);
double parse_decimal(const std::string& text, const std::string& context);

}  // namespace hamclass

#endif  // HAMCLASS_INSTANCE_HPP
