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

#include "hamclass/instance.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hamclass {

using nlohmann::json;

std::string decimal_string(double value) {
  // Shortest representation that parses back exactly.
  for (int prec = 1; prec <= 17; ++prec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, value);
    if (std::strtod(buf, nullptr) == value) return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

double parse_decimal(const std::string& text, const std::string& context) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    fail(Errc::ParseError, context + ": invalid decimal string '" + text + "'");
  return v;
}

void HamiltonianInstance::add_interaction(const std::string& name, PauliTable table) {
  interactions.emplace(name, Interaction(name, std::move(table)));
}

void HamiltonianInstance::add_term(const std::string& id, std::vector<int> qubits, double weight) {
  terms.push_back(make_term(id, std::move(qubits), weight));
}

PlacedTerm make_term(const std::string& id, std::vector<int> qubits, double weight) {
  PlacedTerm t;
  t.interaction_id = id;
  t.qubits = std::move(qubits);
  t.weight = weight;
  t.weight_str = decimal_string(weight);
  return t;
}

std::vector<std::string> validate(const HamiltonianInstance& inst) {
  std::vector<std::string> violations;
  if (inst.n < 1) violations.push_back("QubitCountNonPositive");
  for (std::size_t i = 0; i < inst.terms.size(); ++i) {
    const PlacedTerm& t = inst.terms[i];
    const std::string at = " at term " + std::to_string(i);
    auto it = inst.interactions.find(t.interaction_id);
    if (it == inst.interactions.end()) {
      violations.push_back("UnknownInteraction" + at + " ('" + t.interaction_id + "')");
      continue;
    }
    if (static_cast<int>(t.qubits.size()) != it->second.arity())
      violations.push_back("ArityMismatch" + at);
    for (std::size_t a = 0; a < t.qubits.size(); ++a) {
      if (t.qubits[a] < 0 || t.qubits[a] >= inst.n) {
        violations.push_back("IndexOutOfRange" + at);
        break;
      }
      for (std::size_t b = a + 1; b < t.qubits.size(); ++b) {
        if (t.qubits[a] == t.qubits[b]) {
          violations.push_back("DuplicateQubit" + at);
          a = t.qubits.size();
          break;
        }
      }
    }
    if (std::abs(t.weight) > kWeightMax) violations.push_back("WeightTooLarge" + at);
  }
  if (inst.thresholds && !(inst.thresholds->b > inst.thresholds->a))
    violations.push_back("ThresholdOrder (b must exceed a)");
  return violations;
}

AssembledOperator::AssembledOperator(int n, std::vector<Term> terms)
    : n_(n), terms_(std::move(terms)), mutex_(std::make_shared<std::mutex>()) {}

namespace {

struct TermLayout {
  std::vector<int> shifts;   // bit shift per interaction site
  std::uint64_t clear_mask;  // clears the term's bits
};

TermLayout layout_for(int n, const std::vector<int>& qubits) {
  TermLayout l;
  l.clear_mask = ~std::uint64_t{0};
  for (int q : qubits) {
    const int shift = n - 1 - q;
    l.shifts.push_back(shift);
    l.clear_mask &= ~(std::uint64_t{1} << shift);
  }
  return l;
}

inline std::uint64_t local_index(std::uint64_t idx, const TermLayout& l) {
  std::uint64_t loc = 0;
  for (int shift : l.shifts) loc = (loc << 1) | ((idx >> shift) & 1u);
  return loc;
}

inline std::uint64_t replace_local(std::uint64_t idx, const TermLayout& l, std::uint64_t loc) {
  std::uint64_t out = idx & l.clear_mask;
  const int a = static_cast<int>(l.shifts.size());
  for (int j = 0; j < a; ++j) out |= ((loc >> (a - 1 - j)) & 1u) << l.shifts[j];
  return out;
}

}  // namespace

void AssembledOperator::apply(const Vector& x, Vector& y) const {
  y.setZero(x.size());
  const std::uint64_t dim = static_cast<std::uint64_t>(x.size());
  for (const Term& t : terms_) {
    const TermLayout l = layout_for(n_, t.qubits);
    const auto ldim = t.op.rows();
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
      const std::uint64_t loc = local_index(idx, l);
      const Complex amp = x(static_cast<Eigen::Index>(idx));
      if (amp == Complex{}) continue;
      for (Eigen::Index r = 0; r < ldim; ++r) {
        const Complex m = t.op(r, static_cast<Eigen::Index>(loc));
        if (m != Complex{})
          y(static_cast<Eigen::Index>(replace_local(idx, l, static_cast<std::uint64_t>(r)))) +=
              m * amp;
      }
    }
  }
}

Vector AssembledOperator::apply(const Vector& x) const {
  Vector y;
  apply(x, y);
  return y;
}

const Matrix& AssembledOperator::dense() const {
  std::lock_guard<std::mutex> lock(*mutex_);
  if (dense_cache_) return *dense_cache_;
  if (dim() > kDenseMax)
    fail(Errc::DimensionMismatch,
         "dense form unavailable beyond dimension " + std::to_string(kDenseMax));
  auto h = std::make_shared<Matrix>(Matrix::Zero(dim(), dim()));
  const std::uint64_t d = static_cast<std::uint64_t>(dim());
  for (const Term& t : terms_) {
    const TermLayout l = layout_for(n_, t.qubits);
    const auto ldim = t.op.rows();
    for (std::uint64_t idx = 0; idx < d; ++idx) {
      const std::uint64_t loc = local_index(idx, l);
      for (Eigen::Index r = 0; r < ldim; ++r) {
        const Complex m = t.op(r, static_cast<Eigen::Index>(loc));
        if (m != Complex{})
          (*h)(static_cast<Eigen::Index>(replace_local(idx, l, static_cast<std::uint64_t>(r))),
               static_cast<Eigen::Index>(idx)) += m;
      }
    }
  }
  dense_cache_ = h;
  return *dense_cache_;
}

double AssembledOperator::norm_upper_bound() const {
  double total = 0.0;
  for (const Term& t : terms_) total += t.op.operatorNorm();
  return total;
}

AssembledOperator assemble(const HamiltonianInstance& inst) {
  const auto violations = validate(inst);
  if (!violations.empty()) {
    std::string msg;
    for (const auto& v : violations) msg += (msg.empty() ? "" : "; ") + v;
    fail(Errc::ValidationFailed, msg);
  }
  std::vector<AssembledOperator::Term> terms;
  terms.reserve(inst.terms.size());
  for (const PlacedTerm& t : inst.terms) {
    const Interaction& inter = inst.interactions.at(t.interaction_id);
    terms.push_back({t.weight * inter.dense, t.qubits});
  }
  return AssembledOperator(inst.n, std::move(terms));
}

namespace {

PauliTable parse_pauli_object(const json& obj, int arity, const std::string& context) {
  PauliTable table(arity);
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string& chars = it.key();
    if (static_cast<int>(chars.size()) != arity)
      fail(Errc::ParseError, context + ": Pauli string '" + chars + "' has wrong length");
    double v = 0.0;
    if (it.value().is_string())
      v = parse_decimal(it.value().get<std::string>(), context + "." + chars);
    else if (it.value().is_number())
      v = it.value().get<double>();
    else
      fail(Errc::ParseError, context + "." + chars + ": expected decimal string");
    table.add(chars, v);
  }
  return table;
}

Catalog parse_catalog(const json& obj, const std::string& context) {
  Catalog catalog;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string& name = it.key();
    const json& spec = it.value();
    if (!spec.is_object() || !spec.contains("arity") || !spec.contains("pauli"))
      fail(Errc::ParseError, context + "." + name + ": expected {arity, pauli}");
    const int arity = spec.at("arity").get<int>();
    if (arity < 1 || arity > kMaxQubits)
      fail(Errc::ArityTooLarge, context + "." + name + ": arity " + std::to_string(arity));
    catalog.emplace(name, Interaction(name, parse_pauli_object(spec.at("pauli"), arity,
                                                               context + "." + name + ".pauli")));
  }
  return catalog;
}

json catalog_to_json(const Catalog& catalog) {
  json out = json::object();
  for (const auto& [name, inter] : catalog) {
    json pauli = json::object();
    for (const auto& [code, c] : inter.table.coeffs())
      pauli[pauli_unpack(code, inter.arity())] = decimal_string(c);
    out[name] = {{"arity", inter.arity()}, {"pauli", pauli}};
  }
  return out;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::ParseError, e.what());
  }
}

}  // namespace

HamiltonianInstance read_instance(const std::string& json_text) {
  const json doc = parse_text(json_text);
  if (!doc.is_object()) fail(Errc::ParseError, "instance document must be a JSON object");
  HamiltonianInstance inst;
  try {
    inst.n = doc.at("n").get<int>();
    inst.interactions = parse_catalog(doc.at("interactions"), "interactions");
    for (std::size_t i = 0; i < doc.at("terms").size(); ++i) {
      const json& jt = doc.at("terms").at(i);
      const std::string context = "terms[" + std::to_string(i) + "]";
      PlacedTerm t;
      t.interaction_id = jt.at("id").get<std::string>();
      if (!jt.at("qubits").is_array()) fail(Errc::ParseError, context + ".qubits: expected array");
      for (const json& q : jt.at("qubits")) {
        if (!q.is_number_integer()) fail(Errc::ParseError, context + ".qubits: expected integers");
        t.qubits.push_back(q.get<int>());
      }
      if (jt.at("weight").is_string())
        t.weight_str = jt.at("weight").get<std::string>();
      else if (jt.at("weight").is_number())
        t.weight_str = decimal_string(jt.at("weight").get<double>());
      else
        fail(Errc::ParseError, context + ".weight: expected decimal string");
      t.weight = parse_decimal(t.weight_str, context + ".weight");
      if (inst.interactions.find(t.interaction_id) == inst.interactions.end())
        fail(Errc::ParseError, context + ": unknown interaction id '" + t.interaction_id + "'");
      inst.terms.push_back(std::move(t));
    }
    if (doc.contains("thresholds")) {
      const json& jt = doc.at("thresholds");
      Thresholds th;
      th.a_str = jt.at("a").is_string() ? jt.at("a").get<std::string>()
                                        : decimal_string(jt.at("a").get<double>());
      th.b_str = jt.at("b").is_string() ? jt.at("b").get<std::string>()
                                        : decimal_string(jt.at("b").get<double>());
      th.a = parse_decimal(th.a_str, "thresholds.a");
      th.b = parse_decimal(th.b_str, "thresholds.b");
      inst.thresholds = th;
    }
  } catch (const json::exception& e) {
    fail(Errc::ParseError, e.what());
  }
  return inst;
}

HamiltonianInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return read_instance(ss.str());
}

std::string write_instance(const HamiltonianInstance& inst) {
  json doc;
  doc["n"] = inst.n;
  doc["interactions"] = catalog_to_json(inst.interactions);
  json terms = json::array();
  for (const PlacedTerm& t : inst.terms) {
    json jt;
    jt["id"] = t.interaction_id;
    jt["qubits"] = t.qubits;
    jt["weight"] = t.weight_str.empty() ? decimal_string(t.weight) : t.weight_str;
    terms.push_back(jt);
  }
  doc["terms"] = terms;
  if (inst.thresholds)
    doc["thresholds"] = {{"a", inst.thresholds->a_str}, {"b", inst.thresholds->b_str}};
  return doc.dump(2) + "\n";
}

void write_instance_file(const HamiltonianInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::ParseError, "cannot open '" + path + "' for writing");
  out << write_instance(inst);
}

Catalog read_interaction_set(const std::string& json_text) {
  const json doc = parse_text(json_text);
  if (!doc.is_object() || !doc.contains("interactions"))
    fail(Errc::ParseError, "interaction-set document must contain 'interactions'");
  return parse_catalog(doc.at("interactions"), "interactions");
}

std::string write_interaction_set(const Catalog& catalog) {
  json doc;
  doc["interactions"] = catalog_to_json(catalog);
  return doc.dump(2) + "\n";
}

}  // namespace hamclass
