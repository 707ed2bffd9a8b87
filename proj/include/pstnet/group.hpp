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

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "pstnet/errors.hpp"

namespace pstnet {

enum class Family { cyclic, dihedral_even, clifford, u6n, v8n, custom };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::cyclic: return "cyclic";
    case Family::dihedral_even: return "dihedral_even";
    case Family::clifford: return "clifford";
    case Family::u6n: return "u6n";
    case Family::v8n: return "v8n";
    case Family::custom: return "custom";
  }
  return "custom";
}

inline Family parse_family(const std::string& s) {
  if (s == "cyclic") return Family::cyclic;
  if (s == "dihedral_even" || s == "dihedral") return Family::dihedral_even;
  if (s == "clifford") return Family::clifford;
  if (s == "u6n") return Family::u6n;
  if (s == "v8n") return Family::v8n;
  if (s == "custom") return Family::custom;
  throw ParameterError("unknown family '" + s + "'");
}

/// Normal form of an element: exponents (a^x b^y), or (sign, gamma mask)
/// for the Clifford family.
using NormalForm = std::array<int, 2>;

/// A finite group materialized as a Cayley table over dense indices.
/// Index 0 is the identity; indices follow breadth-first discovery from the
/// generators, so index order is shortlex order of minimal generator words.
struct FiniteGroup {
  int order = 0;
  std::vector<int> cayley;  // row-major, cayley[i*order+j] = index of g_i g_j
  int identity = 0;
  std::vector<int> inverses;
  std::vector<std::string> labels;  // normal-form names, e.g. "a^2b"
  std::vector<std::string> words;   // shortlex-minimal generator words
  std::vector<NormalForm> normal_forms;
  std::vector<int> generators;
  Family family = Family::custom;
  int param = 0;

  int mul(int i, int j) const { return cayley[static_cast<std::size_t>(i) * order + j]; }
  int inv(int i) const { return inverses[i]; }
  int conj(int h, int x) const { return mul(mul(h, x), inverses[h]); }

  std::optional<int> find_label(const std::string& label) const {
    for (int i = 0; i < order; ++i)
      if (labels[i] == label || words[i] == label) return i;
    return std::nullopt;
  }

  std::optional<int> find_normal_form(NormalForm nf) const {
    for (int i = 0; i < order; ++i)
      if (normal_forms[i] == nf) return i;
    return std::nullopt;
  }

  bool is_abelian() const {
    for (int i = 0; i < order; ++i)
      for (int j = i + 1; j < order; ++j)
        if (mul(i, j) != mul(j, i)) return false;
    return true;
  }
};

namespace detail {

inline int mod(int a, int n) { return ((a % n) + n) % n; }

struct FamilyRules {
  NormalForm identity;
  std::vector<NormalForm> generators;
  std::vector<std::string> letters;
  std::string identity_word;
  NormalForm (*multiply)(NormalForm, NormalForm, int);
  std::string (*label)(NormalForm, int);
};

inline std::string power(const std::string& letter, int e) {
  if (e == 0) return "";
  if (e == 1) return letter;
  return letter + "^" + std::to_string(e);
}

inline std::string ab_label(NormalForm x, int) {
  if (x[0] == 0 && x[1] == 0) return "e";
  return power("a", x[0]) + power("b", x[1]);
}

inline std::string clifford_label(NormalForm x, int n) {
  std::string s = x[0] < 0 ? "-" : "";
  if (x[1] == 0) return s + "1";
  for (int i = 0; i < n; ++i)
    if (x[1] >> i & 1) s += "g" + std::to_string(i + 1);
  return s;
}

/// Sign of gamma_A gamma_B relative to gamma_{A xor B}: every gamma_j in B
/// is moved left past the gammas of A with larger index.
inline int clifford_sign(unsigned a, unsigned b) {
  int swaps = 0;
  for (unsigned j = 0; j < 32; ++j)
    if (b >> j & 1u) swaps += std::popcount(a >> (j + 1));
  return swaps % 2 == 0 ? 1 : -1;
}

inline FamilyRules rules_for(Family f, int n) {
  FamilyRules r;
  switch (f) {
    case Family::cyclic:
      r.identity = {0, 0};
      r.generators = {{1 % n, 0}};
      r.letters = {"a"};
      r.identity_word = "e";
      r.multiply = [](NormalForm x, NormalForm y, int n) -> NormalForm {
        return {mod(x[0] + y[0], n), 0};
      };
      r.label = ab_label;
      break;
    case Family::dihedral_even:
      r.identity = {0, 0};
      r.generators = {{1 % n, 0}, {0, 1}};
      r.letters = {"a", "b"};
      r.identity_word = "e";
      r.multiply = [](NormalForm x, NormalForm y, int n) -> NormalForm {
        // b a^k = a^{-k} b
        return {mod(x[0] + (x[1] ? -y[0] : y[0]), n), (x[1] + y[1]) % 2};
      };
      r.label = ab_label;
      break;
    case Family::u6n:
      r.identity = {0, 0};
      r.generators = {{1 % (2 * n), 0}, {0, 1}};
      r.letters = {"a", "b"};
      r.identity_word = "e";
      r.multiply = [](NormalForm x, NormalForm y, int n) -> NormalForm {
        // b^j a^k = a^k b^{j(-1)^k}
        const int twist = (y[0] % 2 == 0) ? x[1] : -x[1];
        return {mod(x[0] + y[0], 2 * n), mod(twist + y[1], 3)};
      };
      r.label = ab_label;
      break;
    case Family::v8n:
      r.identity = {0, 0};
      r.generators = {{1 % (2 * n), 0}, {0, 1}};
      r.letters = {"a", "b"};
      r.identity_word = "e";
      r.multiply = [](NormalForm x, NormalForm y, int n) -> NormalForm {
        // b a^k b^-1 = a^{-k} b^{2k}, with b^2 central
        if (x[1] % 2 == 0) return {mod(x[0] + y[0], 2 * n), mod(x[1] + y[1], 4)};
        return {mod(x[0] - y[0], 2 * n), mod(x[1] + y[1] + 2 * y[0], 4)};
      };
      r.label = ab_label;
      break;
    case Family::clifford:
      r.identity = {1, 0};
      for (int i = 0; i < n; ++i) {
        r.generators.push_back({1, 1 << i});
        r.letters.push_back("g" + std::to_string(i + 1));
      }
      r.identity_word = "1";
      r.multiply = [](NormalForm x, NormalForm y, int) -> NormalForm {
        const int s = x[0] * y[0] *
                      clifford_sign(static_cast<unsigned>(x[1]), static_cast<unsigned>(y[1]));
        return {s, x[1] ^ y[1]};
      };
      r.label = clifford_label;
      break;
    case Family::custom:
      throw ParameterError("custom groups are built from an explicit Cayley table");
  }
  return r;
}

inline void check_family_parameter(Family f, int n) {
  if (n < 1) throw ParameterError(to_string(f) + ": n must be a positive integer");
  switch (f) {
    case Family::dihedral_even:
      if (n % 2 != 0)
        throw ParameterError("dihedral_even: relation a^n = 1 requires even n = 2m, got n = " +
                             std::to_string(n));
      break;
    case Family::v8n:
      if (n % 2 == 0)
        throw ParameterError("v8n: relation a^{2n} = b^4 = 1 is only used with odd n, got n = " +
                             std::to_string(n));
      break;
    case Family::clifford:
      if (n < 3)
        throw ParameterError("clifford: gamma_i gamma_j + gamma_j gamma_i = 2 delta_ij requires n >= 3, got n = " +
                             std::to_string(n));
      if (n > 20) throw ParameterError("clifford: n > 20 exceeds the materializable group size");
      break;
    default:
      break;
  }
}

inline std::string compress_word(const std::vector<int>& word,
                                 const std::vector<std::string>& letters,
                                 const std::string& identity_word) {
  if (word.empty()) return identity_word;
  const bool single_char = std::all_of(letters.begin(), letters.end(),
                                       [](const std::string& l) { return l.size() == 1; });
  std::string out;
  std::size_t i = 0;
  while (i < word.size()) {
    std::size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    const int run = static_cast<int>(j - i);
    if (single_char) {
      out += power(letters[word[i]], run);
    } else {
      for (int k = 0; k < run; ++k) out += letters[word[i]];
    }
    i = j;
  }
  return out;
}

inline FiniteGroup close_generators(Family f, int n) {
  const FamilyRules rules = rules_for(f, n);
  FiniteGroup g;
  g.family = f;
  g.param = n;

  std::map<NormalForm, int> index;
  std::vector<std::vector<int>> word_of;
  auto add = [&](NormalForm x, std::vector<int> word) {
    index.emplace(x, static_cast<int>(g.normal_forms.size()));
    g.normal_forms.push_back(x);
    word_of.push_back(std::move(word));
  };
  add(rules.identity, {});
  for (std::size_t head = 0; head < g.normal_forms.size(); ++head) {
    for (std::size_t k = 0; k < rules.generators.size(); ++k) {
      const NormalForm y = rules.multiply(g.normal_forms[head], rules.generators[k], n);
      if (!index.count(y)) {
        auto w = word_of[head];
        w.push_back(static_cast<int>(k));
        add(y, std::move(w));
      }
    }
  }

  g.order = static_cast<int>(g.normal_forms.size());
  g.cayley.resize(static_cast<std::size_t>(g.order) * g.order);
  for (int i = 0; i < g.order; ++i)
    for (int j = 0; j < g.order; ++j)
      g.cayley[static_cast<std::size_t>(i) * g.order + j] =
          index.at(rules.multiply(g.normal_forms[i], g.normal_forms[j], n));
  g.identity = 0;
  g.inverses.assign(g.order, -1);
  for (int i = 0; i < g.order; ++i)
    for (int j = 0; j < g.order; ++j)
      if (g.mul(i, j) == g.identity) g.inverses[i] = j;
  for (int i = 0; i < g.order; ++i) {
    g.labels.push_back(rules.label(g.normal_forms[i], n));
    g.words.push_back(compress_word(word_of[i], rules.letters, rules.identity_word));
  }
  for (const auto& gen : rules.generators) g.generators.push_back(index.at(gen));
  return g;
}

}  // namespace detail

/// Materializes one of the five families. The parameter is the family's own
/// n: group order for cyclic, D_{2n} for dihedral_even, CL(n), U_{6n}, V_{8n}.
inline FiniteGroup build_group(Family f, int n) {
  detail::check_family_parameter(f, n);
  return detail::close_generators(f, n);
}

/// Wraps an explicit multiplication table whose element 0 is the identity.
/// Elements without a two-sided inverse keep -1; verify_group_axioms reports
/// them together with any associativity failure.
inline FiniteGroup group_from_table(const std::vector<std::vector<int>>& table) {
  FiniteGroup g;
  g.family = Family::custom;
  g.order = static_cast<int>(table.size());
  if (g.order == 0) throw ParameterError("custom: empty Cayley table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != g.order)
      throw ParameterError("custom: Cayley table is not square");
    for (int v : row)
      if (v < 0 || v >= g.order) throw ParameterError("custom: entry out of range");
  }
  g.param = g.order;
  g.cayley.reserve(static_cast<std::size_t>(g.order) * g.order);
  for (const auto& row : table) g.cayley.insert(g.cayley.end(), row.begin(), row.end());
  int e = -1;
  for (int i = 0; i < g.order && e < 0; ++i) {
    bool ok = true;
    for (int j = 0; j < g.order && ok; ++j) ok = g.mul(i, j) == j && g.mul(j, i) == j;
    if (ok) e = i;
  }
  if (e != 0) throw ParameterError("custom: element 0 must be the identity");
  g.identity = 0;
  g.inverses.assign(g.order, -1);
  for (int i = 0; i < g.order; ++i)
    for (int j = 0; j < g.order; ++j)
      if (g.mul(i, j) == 0 && g.mul(j, i) == 0) g.inverses[i] = j;
  for (int i = 0; i < g.order; ++i) {
    g.labels.push_back(i == 0 ? "e" : "x" + std::to_string(i));
    g.words.push_back(g.labels.back());
    g.normal_forms.push_back({i, 0});
    g.generators.push_back(i);
  }
  return g;
}

struct AxiomReport {
  bool closure = true;       // rows and columns are permutations
  bool associativity = true;
  bool identity = true;
  bool inverses = true;
  std::vector<std::string> failures;

  bool passed() const { return closure && associativity && identity && inverses; }
};

inline AxiomReport verify_group_axioms(const FiniteGroup& g) {
  AxiomReport r;
  const int n = g.order;
  auto fail = [&](bool& flag, std::string msg) {
    if (flag) r.failures.push_back(std::move(msg));
    flag = false;
  };
  if (static_cast<int>(g.cayley.size()) != n * n) {
    fail(r.closure, "table size mismatch");
    return r;
  }
  for (int i = 0; i < n; ++i) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int j = 0; j < n; ++j) {
      const int a = g.mul(i, j), b = g.mul(j, i);
      if (a < 0 || a >= n || b < 0 || b >= n) {
        fail(r.closure, "entry out of range in row/column " + std::to_string(i));
        return r;
      }
      row[a] = 1;
      col[b] = 1;
    }
    if (std::count(row.begin(), row.end(), 1) != n || std::count(col.begin(), col.end(), 1) != n)
      fail(r.closure, "row or column " + std::to_string(i) + " is not a permutation");
  }
  for (int i = 0; i < n && r.associativity; ++i)
    for (int j = 0; j < n && r.associativity; ++j) {
      const int ij = g.mul(i, j);
      for (int k = 0; k < n; ++k)
        if (g.mul(ij, k) != g.mul(i, g.mul(j, k))) {
          fail(r.associativity, "(" + std::to_string(i) + "*" + std::to_string(j) + ")*" +
                                    std::to_string(k) + " != " + std::to_string(i) + "*(" +
                                    std::to_string(j) + "*" + std::to_string(k) + ")");
          break;
        }
    }
  for (int j = 0; j < n; ++j)
    if (g.mul(g.identity, j) != j || g.mul(j, g.identity) != j) {
      fail(r.identity, "identity fails on element " + std::to_string(j));
      break;
    }
  if (static_cast<int>(g.inverses.size()) != n) {
    fail(r.inverses, "inverse list has wrong length");
  } else {
    for (int i = 0; i < n; ++i)
      if (g.inverses[i] < 0 || g.inverses[i] >= n || g.mul(i, g.inverses[i]) != g.identity) {
        fail(r.inverses, "element " + std::to_string(i) + " has a wrong inverse");
        break;
      }
  }
  return r;
}

struct ConjugacyClasses {
  std::vector<std::vector<int>> classes;  // each sorted ascending
  std::vector<int> representatives;
  std::vector<int> sizes;
  std::vector<int> inverse_class;
  std::vector<int> class_of;  // element index -> class index

  int count() const { return static_cast<int>(classes.size()); }
};

namespace detail {

/// Sort key placing classes in the canonical per-family order.
inline std::vector<int> class_key(const FiniteGroup& g, int element) {
  const NormalForm x = g.normal_forms[element];
  const int n = g.param;
  switch (g.family) {
    case Family::cyclic:
      return {x[0]};
    case Family::dihedral_even:
      if (x[1] == 0) return {0, std::min(x[0], n - x[0])};
      return {1, x[0] % 2};
    case Family::u6n:
      if (x[0] % 2 == 0) return {x[1] == 0 ? 0 : 1, x[0] / 2};
      return {2, (x[0] - 1) / 2};
    case Family::v8n: {
      const int i = x[0], j = x[1];
      if (j % 2 == 1) return {5, i % 2};
      if (i == 0) return {j == 0 ? 0 : 1};
      if (i % 2 == 1) return {2, j == 0 ? (i - 1) / 2 : (2 * n - i - 1) / 2};
      return {j == 0 ? 3 : 4, std::min(i, 2 * n - i) / 2};
    }
    case Family::clifford: {
      const unsigned mask = static_cast<unsigned>(x[1]);
      const unsigned full = (1u << n) - 1u;
      if (mask == 0) return {x[0] > 0 ? 0 : 1};
      if (n % 2 == 1 && mask == full) return {3, x[0] > 0 ? 0 : 1};
      std::vector<int> key{2, std::popcount(mask)};
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1u) key.push_back(i);
      return key;
    }
    case Family::custom:
      return {};
  }
  return {};
}

}  // namespace detail

/// Partition into conjugacy classes, ordered canonically for the family
/// (custom groups: by smallest element index). Representatives are the
/// smallest index in each class, i.e. the shortlex-least generator word.
inline ConjugacyClasses conjugacy_classes(const FiniteGroup& g) {
  std::vector<int> owner(g.order, -1);
  std::vector<std::vector<int>> raw;
  for (int x = 0; x < g.order; ++x) {
    if (owner[x] >= 0) continue;
    std::vector<int> cls;
    for (int h = 0; h < g.order; ++h) {
      const int y = g.conj(h, x);
      if (owner[y] < 0) {
        owner[y] = static_cast<int>(raw.size());
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    raw.push_back(std::move(cls));
  }

  std::vector<std::pair<std::vector<int>, int>> keyed;
  for (int c = 0; c < static_cast<int>(raw.size()); ++c) {
    auto key = detail::class_key(g, raw[c].front());
    for (int x : raw[c])
      if (detail::class_key(g, x) != key)
        throw ConsistencyError("class ordering key is not constant on class of " + g.labels[x]);
    key.push_back(raw[c].front());
    keyed.emplace_back(std::move(key), c);
  }
  std::sort(keyed.begin(), keyed.end());

  ConjugacyClasses cc;
  cc.class_of.assign(g.order, -1);
  for (const auto& [key, c] : keyed) {
    const int idx = cc.count();
    for (int x : raw[c]) cc.class_of[x] = idx;
    cc.representatives.push_back(raw[c].front());
    cc.sizes.push_back(static_cast<int>(raw[c].size()));
    cc.classes.push_back(raw[c]);
  }
  if (cc.class_of[g.identity] != 0) throw ConsistencyError("identity class is not first");
  cc.inverse_class.resize(cc.count());
  for (int i = 0; i < cc.count(); ++i) cc.inverse_class[i] = cc.class_of[g.inv(cc.representatives[i])];
  return cc;
}

/// Class pairing i -> i' with C_{i'} = { x^-1 : x in C_i }.
inline std::vector<int> inverse_class_map(const ConjugacyClasses& c, const FiniteGroup& g) {
  std::vector<int> pairing(c.count());
  for (int i = 0; i < c.count(); ++i) {
    pairing[i] = c.class_of[g.inv(c.classes[i].front())];
    for (int x : c.classes[i])
      if (c.class_of[g.inv(x)] != pairing[i])
        throw ConsistencyError("inverses of class " + std::to_string(i) + " span several classes");
  }
  return pairing;
}

/// Elements commuting with every generator (hence with the whole group).
inline std::vector<int> center(const FiniteGroup& g) {
  std::vector<int> z;
  for (int x = 0; x < g.order; ++x) {
    const bool central = std::all_of(g.generators.begin(), g.generators.end(),
                                     [&](int h) { return g.mul(h, x) == g.mul(x, h); });
    if (central) z.push_back(x);
  }
  return z;
}

/// The family's designated PST antipode: a^m for C_{2m} and D_{2n} (n = 2m),
/// -1 in CL(n), a^2 in U_{6n}, b^2 in V_{8n}.
inline int default_target_element(const FiniteGroup& g) {
  const int n = g.param;
  std::optional<int> found;
  switch (g.family) {
    case Family::cyclic:
    case Family::dihedral_even:
      found = g.find_normal_form({n / 2, 0});
      break;
    case Family::clifford:
      found = g.find_normal_form({-1, 0});
      break;
    case Family::u6n:
      found = g.find_normal_form({2 % (2 * n), 0});
      break;
    case Family::v8n:
      found = g.find_normal_form({0, 2});
      break;
    case Family::custom:
      break;
  }
  if (!found) throw ParameterError(to_string(g.family) + " has no default target; pass one explicitly");
  return *found;
}

}  // namespace pstnet
