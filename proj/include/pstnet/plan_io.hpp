// Copyright 2026 The pstnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "pstnet/dynamics.hpp"
#include "pstnet/errors.hpp"
#include "pstnet/pipeline.hpp"
#include "pstnet/solver.hpp"

namespace pstnet {

inline constexpr const char* kToolVersion = "1.0.0";

using Json = nlohmann::ordered_json;

/// A CouplingPlan together with the provenance needed to rebuild its scheme.
struct PlanDocument {
  std::string tool_version = kToolVersion;
  Family family = Family::custom;
  int n = 0;
  Backend backend = Backend::analytic;
  std::uint64_t seed = kDefaultSeed;
  int order = 0;
  std::vector<std::string> class_labels;  // representative label per class
  std::vector<int> class_sizes;
  std::string target_label;
  std::vector<std::string> mode_labels;
  std::vector<int> mode_dims;
  CouplingPlan plan;
};

inline PlanDocument make_document(const System& sys, const CouplingPlan& plan) {
  PlanDocument doc;
  doc.family = sys.family;
  doc.n = sys.n;
  doc.backend = sys.backend;
  doc.seed = sys.seed;
  doc.order = sys.scheme.N;
  for (int i = 0; i < sys.scheme.num_classes(); ++i) {
    doc.class_labels.push_back(sys.scheme.class_label(i));
    doc.class_sizes.push_back(sys.scheme.valencies[i]);
  }
  doc.target_label = sys.scheme.vertex_labels[plan.target.target_vertex];
  doc.mode_labels = sys.table.labels;
  doc.mode_dims = sys.table.dims;
  doc.plan = plan;
  return doc;
}

inline Json to_json(const PlanDocument& doc) {
  const auto& p = doc.plan;
  Json j;
  j["tool"] = "pstnet";
  j["version"] = doc.tool_version;
  j["family"] = to_string(doc.family);
  j["n"] = doc.n;
  j["backend"] = to_string(doc.backend);
  j["seed"] = doc.seed;
  j["order"] = doc.order;
  Json classes = Json::array();
  for (std::size_t i = 0; i < doc.class_labels.size(); ++i)
    classes.push_back(Json{{"index", i}, {"representative", doc.class_labels[i]}, {"size", doc.class_sizes[i]}});
  j["classes"] = classes;
  j["source_vertex"] = p.source_vertex;
  j["target_class"] = p.target.target_class;
  j["target_vertex"] = p.target.target_vertex;
  j["target_label"] = doc.target_label;
  j["theta"] = p.theta;
  j["t0"] = p.t0;
  j["strategy"] = to_string(p.strategy);
  Json modes = Json::array();
  for (std::size_t l = 0; l < p.tilde.size(); ++l)
    modes.push_back(Json{{"label", doc.mode_labels[l]},
                         {"dim", doc.mode_dims[l]},
                         {"eigenspace", p.fold[l]},
                         {"phi", p.phi[l]},
                         {"n", p.n_choices[l]},
                         {"tilde", p.tilde[l]}});
  j["modes"] = modes;
  Json couplings = Json::array();
  for (std::size_t i = 0; i < p.couplings.size(); ++i)
    couplings.push_back(Json{{"class", i}, {"re", p.couplings[i].real()}, {"im", p.couplings[i].imag()}});
  j["couplings"] = couplings;
  return j;
}

inline PlanDocument plan_from_json(const Json& j) {
  try {
    PlanDocument doc;
    doc.tool_version = j.at("version").get<std::string>();
    doc.family = parse_family(j.at("family").get<std::string>());
    doc.n = j.at("n").get<int>();
    doc.backend = parse_backend(j.at("backend").get<std::string>());
    doc.seed = j.at("seed").get<std::uint64_t>();
    doc.order = j.at("order").get<int>();
    for (const auto& c : j.at("classes")) {
      doc.class_labels.push_back(c.at("representative").get<std::string>());
      doc.class_sizes.push_back(c.at("size").get<int>());
    }
    auto& p = doc.plan;
    p.source_vertex = j.at("source_vertex").get<int>();
    p.target.target_class = j.at("target_class").get<int>();
    p.target.target_vertex = j.at("target_vertex").get<int>();
    doc.target_label = j.at("target_label").get<std::string>();
    p.theta = j.at("theta").get<double>();
    p.t0 = j.at("t0").get<double>();
    p.strategy = parse_strategy(j.at("strategy").get<std::string>());
    for (const auto& m : j.at("modes")) {
      doc.mode_labels.push_back(m.at("label").get<std::string>());
      doc.mode_dims.push_back(m.at("dim").get<int>());
      p.fold.push_back(m.at("eigenspace").get<int>());
      p.phi.push_back(m.at("phi").get<double>());
      p.n_choices.push_back(m.at("n").get<long long>());
      p.tilde.push_back(m.at("tilde").get<double>());
    }
    for (const auto& c : j.at("couplings")) p.couplings.emplace_back(c.at("re").get<double>(), c.at("im").get<double>());
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed plan document: ") + e.what());
  }
}

inline std::string serialize(const PlanDocument& doc) { return to_json(doc).dump(2) + "\n"; }

inline PlanDocument parse_plan(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("plan is not valid JSON: ") + e.what());
  }
  return plan_from_json(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes to a sibling temporary file, then renames over the target.
inline void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParameterError("cannot write " + tmp.string());
    out << content;
    if (!out) throw ParameterError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

inline std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string trace_csv(const FidelityTrace& tr) {
  std::string out = "t,abs_f,arg_f\n";
  for (std::size_t k = 0; k < tr.times.size(); ++k)
    out += format_g17(tr.times[k]) + "," + format_g17(std::abs(tr.amplitudes[k])) + "," +
           format_g17(std::arg(tr.amplitudes[k])) + "\n";
  return out;
}

}  // namespace pstnet
