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

#include <cctype>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pstnet/dynamics.hpp"
#include "pstnet/errors.hpp"
#include "pstnet/fock.hpp"
#include "pstnet/pipeline.hpp"
#include "pstnet/plan_io.hpp"
#include "pstnet/scheme.hpp"

namespace pstnet {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitBadParameters = 2, kExitInternal = 3 };

/// Parses a decimal literal or a product/quotient of numbers and `pi`,
/// e.g. "0.25", "pi/3", "-2*pi/7", "3pi/4".
inline double parse_pi_expression(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParameterError("empty numeric expression");
  std::size_t pos = 0;
  double sign = 1.0;
  if (s[pos] == '-' || s[pos] == '+') {
    if (s[pos] == '-') sign = -1.0;
    ++pos;
  }
  auto factor = [&]() -> double {
    if (s.compare(pos, 2, "pi") == 0) {
      pos += 2;
      return kPi;
    }
    const char* begin = s.c_str() + pos;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw ParameterError("cannot parse '" + text + "' as a number or pi-expression");
    pos += static_cast<std::size_t>(end - begin);
    if (s.compare(pos, 2, "pi") == 0) {  // "3pi"
      pos += 2;
      return v * kPi;
    }
    return v;
  };
  double value = factor();
  while (pos < s.size()) {
    const char op = s[pos++];
    if (op != '*' && op != '/') throw ParameterError("unexpected '" + std::string(1, op) + "' in '" + text + "'");
    const double f = factor();
    value = (op == '*') ? value * f : value / f;
  }
  return sign * value;
}

inline std::vector<long long> parse_int_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError("bad integer '" + item + "' in n-list");
    }
  }
  return out;
}

namespace detail {

inline std::string json_escape(const std::string& s) { return Json(s).dump(); }

inline void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << "{\"error\":" << json_escape(kind) << ",\"message\":" << json_escape(message) << "}\n";
}

inline int exit_code_for(const Error& e) {
  const std::string& k = e.kind();
  if (k == "parameter" || k == "unsupported-analytic" || k == "centrality" || k == "strategy" || k == "capacity")
    return kExitBadParameters;
  return kExitInternal;
}

inline std::string join_labels(const FiniteGroup& g, const std::vector<int>& elems) {
  std::string s = "{";
  for (std::size_t i = 0; i < elems.size(); ++i) s += (i ? ", " : "") + g.labels[elems[i]];
  return s + "}";
}

inline std::string fixed9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  return buf;
}

inline std::string sci3(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

struct Options {
  std::string family;
  int n = 0;
  std::string out;
  std::string target;
  std::string theta = "0";
  std::string t0 = "1";
  std::string strategy = "minimal";
  std::string n_list;
  std::string backend = "auto";
  std::uint64_t seed = kDefaultSeed;
  std::string plan;
  std::string t_max;
  int steps = 200;
  int qudit = 0;
  bool oracle = false;
};

inline int cmd_group_info(const Options& o, std::ostream& out) {
  const FiniteGroup g = build_group(parse_family(o.family), o.n);
  const ConjugacyClasses c = conjugacy_classes(g);
  const AxiomReport axioms = verify_group_axioms(g);
  out << "family: " << to_string(g.family) << "\n";
  out << "n: " << o.n << "\n";
  out << "order: " << g.order << "\n";
  out << "axioms: " << (axioms.passed() ? "pass" : "FAIL") << "\n";
  out << "classes: " << c.count() << "\n";
  for (int i = 0; i < c.count(); ++i)
    out << "  C" << i << " size " << c.sizes[i] << " rep " << g.labels[c.representatives[i]] << " inverse C"
        << c.inverse_class[i] << ": " << join_labels(g, c.classes[i]) << "\n";
  out << "center: " << join_labels(g, center(g)) << "\n";
  return axioms.passed() ? kExitOk : kExitInternal;
}

inline int cmd_scheme_build(const Options& o, std::ostream& out) {
  const System sys = build_scheme_only(parse_family(o.family), o.n);
  const auto& s = sys.scheme;
  const IntersectionNumbers p = verify_bose_mesner(s);
  Json j;
  j["tool"] = "pstnet";
  j["version"] = kToolVersion;
  j["family"] = to_string(sys.family);
  j["n"] = sys.n;
  j["source"] = to_string(s.source);
  j["vertices"] = s.N;
  j["num_classes"] = s.num_classes();
  Json classes = Json::array();
  for (int i = 0; i < s.num_classes(); ++i) {
    Json members = Json::array();
    for (int v : s.classes[i]) members.push_back(s.vertex_labels[v]);
    classes.push_back(Json{{"index", i},
                           {"representative", s.class_label(i)},
                           {"valency", s.valencies[i]},
                           {"inverse", s.inverse_pairing[i]},
                           {"members", members}});
  }
  j["classes"] = classes;
  j["intersection_numbers"] = p.p;
  j["bose_mesner_check"] = "pass";
  const std::string text = j.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    write_file_atomic(o.out, text);
    out << "scheme: " << s.num_classes() << " classes on " << s.N << " vertices, Bose-Mesner closure pass\n";
  }
  return kExitOk;
}

inline int cmd_couplings(const Options& o, std::ostream& out) {
  const System sys =
      build_system(parse_family(o.family), o.n, parse_backend(o.backend), o.seed);
  const TargetSpec target = resolve_target(sys, o.target);
  const Strategy strategy = parse_strategy(o.strategy);
  std::vector<long long> custom;
  if (strategy == Strategy::custom) {
    if (o.n_list.empty()) throw ParameterError("strategy custom needs --n-list");
    custom = parse_int_list(o.n_list);
  }
  const CouplingPlan plan = design_plan(sys, target, parse_pi_expression(o.theta), parse_pi_expression(o.t0),
                                        strategy, custom);
  const std::string text = serialize(make_document(sys, plan));
  if (o.out.empty()) {
    out << text;
  } else {
    write_file_atomic(o.out, text);
    out << "plan: " << plan.couplings.size() << " couplings, target " << sys.scheme.vertex_labels[target.target_vertex]
        << " (class " << target.target_class << ")\n";
  }
  return kExitOk;
}

/// Rebuilds the scheme a plan was designed on and checks that it matches.
inline System system_for(const PlanDocument& doc) {
  System sys = build_system(doc.family, doc.n, doc.backend, doc.seed);
  if (sys.scheme.N != doc.order || sys.scheme.num_classes() != static_cast<int>(doc.plan.couplings.size()))
    throw ParameterError("plan does not match the rebuilt " + to_string(doc.family) + " scheme");
  if (doc.plan.target.target_vertex < 0 || doc.plan.target.target_vertex >= sys.scheme.N ||
      doc.plan.source_vertex < 0 || doc.plan.source_vertex >= sys.scheme.N)
    throw ParameterError("plan vertices out of range");
  return sys;
}

inline int cmd_simulate(const Options& o, std::ostream& out) {
  const PlanDocument doc = parse_plan(read_file(o.plan));
  const System sys = system_for(doc);
  build_hamiltonian(sys.scheme, doc.plan.couplings);
  const auto tilde = folded_tilde(doc.plan.couplings, sys.eigen);
  const double t_max = o.t_max.empty() ? 2.0 * doc.plan.t0 : parse_pi_expression(o.t_max);
  const FidelityTrace tr = fidelity_trace(sys.idempotents, tilde, doc.plan.t0, doc.plan.source_vertex,
                                          doc.plan.target.target_vertex, t_max, o.steps);
  const std::string csv = trace_csv(tr);
  if (o.out.empty()) {
    out << csv;
  } else {
    write_file_atomic(o.out, csv);
    out << "trace: " << tr.times.size() << " samples, |f(t0)| = " << fixed9(tr.verdict_abs()) << "\n";
  }
  return kExitOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  const PlanDocument doc = parse_plan(read_file(o.plan));
  const System sys = system_for(doc);
  const auto& plan = doc.plan;
  const CMatrix h = build_hamiltonian(sys.scheme, plan.couplings);
  const auto tilde = folded_tilde(plan.couplings, sys.eigen);
  const int src = plan.source_vertex, dst = plan.target.target_vertex;
  bool ok = true;

  const cplx f = transfer_amplitude(sys.idempotents, tilde, plan.t0, dst, src);
  const bool spectral_ok = std::abs(f) >= 1.0 - 1e-9 && angle_distance(std::arg(f), plan.theta) <= 1e-8;
  ok = ok && spectral_ok;
  out << "spectral: |f| = " << fixed9(std::abs(f)) << " arg = " << fixed9(std::arg(f)) << " theta = "
      << fixed9(plan.theta) << " " << (spectral_ok ? "pass" : "FAIL") << "\n";

  if (o.oracle) {
    const CMatrix u = propagator(sys.idempotents, tilde, plan.t0);
    FockEvolver single(h, 1);
    const double dev = max_abs(u - single.propagator(plan.t0));
    const bool oracle_ok = dev <= 1e-9;
    out << "fock-oracle n=1: max deviation " << sci3(dev) << " " << (oracle_ok ? "pass" : "FAIL") << "\n";
    ok = ok && oracle_ok;
    if (fock_dimension(sys.scheme.N, 2) <= kDefaultFockCap) {
      const double law = product_law_defect(h, u, src, 2, plan.t0);
      const bool law_ok = law <= 1e-9;
      out << "product-law n=2: max deviation " << sci3(law) << " " << (law_ok ? "pass" : "FAIL") << "\n";
      ok = ok && law_ok;
    }
  }
  if (o.qudit > 0) {
    const QuditVerdict q = verify_qudit_transfer(h, src, dst, plan.theta, plan.t0, o.qudit);
    out << "qudit d=" << o.qudit << ": fidelity " << fixed9(q.fidelity) << " " << (q.passed ? "pass" : "FAIL")
        << "\n";
    ok = ok && q.passed;
  }
  out << "verdict: " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? kExitOk : kExitVerifyFailed;
}

inline int cmd_reconcile(const Options& o, std::ostream& out) {
  const Family f = parse_family(o.family);
  const System numeric = build_system(f, o.n, Backend::numeric, o.seed);
  out << "numeric: " << numeric.numeric->size() << " joint eigenspaces, multiplicities";
  for (int m : numeric.numeric->multiplicities) out << " " << m;
  out << " (seed " << o.seed << ", attempts " << numeric.numeric->attempts << ")\n";
  if (!has_analytic_table(f, o.n)) {
    out << "analytic: unavailable for this instance\n";
    return kExitOk;
  }
  const System analytic = build_system(f, o.n, Backend::analytic);
  const MatchingReport r = reconcile(analytic.eigen, *numeric.numeric);
  out << "analytic: " << analytic.eigen.size() << " eigenspaces\n";
  out << "permutation:";
  for (int p : r.permutation) out << " " << p;
  out << "\nmax deviation: " << sci3(r.max_deviation) << " " << (r.success ? "pass" : "FAIL") << "\n";
  return kExitOk;
}

}  // namespace detail

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pstnet: perfect state transfer designer for group-scheme boson networks"};
  app.require_subcommand(1);
  detail::Options o;

  auto add_family = [&](CLI::App* c) {
    c->add_option("--family", o.family, "cyclic | dihedral_even | clifford | u6n | v8n")->required();
    c->add_option("--n", o.n, "family parameter (cycle length 2m for cyclic)")->required();
  };

  auto* group = app.add_subcommand("group", "finite group queries");
  group->require_subcommand(1);
  auto* group_info = group->add_subcommand("info", "order, conjugacy classes and center");
  add_family(group_info);

  auto* scheme = app.add_subcommand("scheme", "association scheme queries");
  scheme->require_subcommand(1);
  auto* scheme_build = scheme->add_subcommand("build", "adjacency matrices and intersection numbers");
  add_family(scheme_build);
  scheme_build->add_option("--out", o.out, "output JSON path (stdout if omitted)");

  auto* couplings = app.add_subcommand("couplings", "design PST couplings");
  add_family(couplings);
  couplings->add_option("--target", o.target, "element label or class index (default: family antipode)");
  couplings->add_option("--theta", o.theta, "global phase, decimal or pi-expression");
  couplings->add_option("--t0", o.t0, "transfer time, decimal or pi-expression");
  couplings->add_option("--strategy", o.strategy, "minimal | paper-cyclic | custom");
  couplings->add_option("--n-list", o.n_list, "comma-separated integers for --strategy custom");
  couplings->add_option("--backend", o.backend, "auto | analytic | numeric");
  couplings->add_option("--seed", o.seed, "seed for the numeric backend");
  couplings->add_option("--out", o.out, "output plan path (stdout if omitted)");

  auto* simulate = app.add_subcommand("simulate", "sample |f(t)| and arg f(t)");
  simulate->add_option("--plan", o.plan, "plan JSON")->required();
  simulate->add_option("--t-max", o.t_max, "end of the time grid (default 2 t0)");
  simulate->add_option("--steps", o.steps, "approximate number of intervals");
  simulate->add_option("--out", o.out, "output CSV path (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "check a plan by simulation");
  verify->add_option("--plan", o.plan, "plan JSON")->required();
  verify->add_option("--qudit", o.qudit, "also transfer a qudit with levels 0..D");
  verify->add_flag("--oracle", o.oracle, "cross-check against the Fock-space oracle");

  auto* rec = app.add_subcommand("reconcile", "compare analytic and numeric eigenvalue matrices");
  add_family(rec);
  rec->add_option("--seed", o.seed, "seed for the numeric backend");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    detail::report_error(err, "usage", e.what());
    return kExitBadParameters;
  }

  try {
    if (group_info->parsed()) return detail::cmd_group_info(o, out);
    if (scheme_build->parsed()) return detail::cmd_scheme_build(o, out);
    if (couplings->parsed()) return detail::cmd_couplings(o, out);
    if (simulate->parsed()) return detail::cmd_simulate(o, out);
    if (verify->parsed()) return detail::cmd_verify(o, out);
    if (rec->parsed()) return detail::cmd_reconcile(o, out);
  } catch (const Error& e) {
    detail::report_error(err, e.kind(), e.what());
    return detail::exit_code_for(e);
  } catch (const std::filesystem::filesystem_error& e) {
    detail::report_error(err, "io", e.what());
    return kExitBadParameters;
  }
  detail::report_error(err, "usage", "no subcommand given");
  return kExitBadParameters;
}

}  // namespace pstnet
