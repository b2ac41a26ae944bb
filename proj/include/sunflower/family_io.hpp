/*
 * Copyright (C) 2026 The sunflower-spread Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SUNFLOWER_FAMILY_IO_HPP
#define SUNFLOWER_FAMILY_IO_HPP

// JSON family format:
//   {"schema_version": 1, "ground_set_size": n, "k": k,
//    "sets": [[e1, ..., ek], ...], "element_names": [...]}
// Element lists are 0-based and strictly increasing. "schema_version" and
// "element_names" are optional on input.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sunflower/error.hpp"
#include "sunflower/family.hpp"

namespace sunflower {

inline constexpr int kSchemaVersion = 1;

/// Word-width independent view of a family file.
struct FamilyDocument {
  std::size_t ground_set_size = 0;
  std::size_t k = 0;
  std::vector<std::vector<unsigned>> sets;
  std::vector<std::string> element_names;
};

inline FamilyDocument parse_family_document(const nlohmann::json& j) {
  auto fail = [](const std::string& m) { throw FormatError("family file: " + m); };
  if (!j.is_object()) fail("top level must be an object");
  for (const char* key : {"ground_set_size", "k", "sets"})
    if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
  if (j.contains("schema_version") &&
      (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() > kSchemaVersion))
    fail("unsupported schema_version");
  if (!j["ground_set_size"].is_number_unsigned()) fail("ground_set_size must be a positive integer");
  if (!j["k"].is_number_unsigned()) fail("k must be a positive integer");

  FamilyDocument doc;
  doc.ground_set_size = j["ground_set_size"].get<std::size_t>();
  doc.k = j["k"].get<std::size_t>();
  if (doc.ground_set_size < 1 || doc.ground_set_size > kMaxGroundSize)
    fail("ground_set_size out of range [1, " + std::to_string(kMaxGroundSize) + "]");
  if (doc.k < 1 || doc.k > doc.ground_set_size) fail("k out of range");
  if (!j["sets"].is_array()) fail("sets must be an array");

  std::size_t row = 0;
  for (const auto& s : j["sets"]) {
    const std::string where = "row " + std::to_string(row++);
    if (!s.is_array()) fail(where + " is not an array");
    std::vector<unsigned> elems;
    for (const auto& e : s) {
      if (!e.is_number_unsigned()) fail(where + " has a non-integer element");
      auto v = e.get<std::size_t>();
      if (v >= doc.ground_set_size) fail(where + " has element " + std::to_string(v) + " outside the ground set");
      if (!elems.empty() && v <= elems.back()) fail(where + " is not strictly increasing");
      elems.push_back(static_cast<unsigned>(v));
    }
    if (elems.size() != doc.k)
      fail(where + " has " + std::to_string(elems.size()) + " elements, expected " + std::to_string(doc.k));
    doc.sets.push_back(std::move(elems));
  }
  auto sorted = doc.sets;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("duplicate set");

  if (j.contains("element_names")) {
    if (!j["element_names"].is_array() || j["element_names"].size() != doc.ground_set_size)
      fail("element_names must list one name per ground element");
    for (const auto& n : j["element_names"]) {
      if (!n.is_string()) fail("element_names must be strings");
      doc.element_names.push_back(n.get<std::string>());
    }
  }
  return doc;
}

/**
 * Re-index a family given by element names onto dense indices, in order of
 * first appearance. The name table is kept in `element_names`.
 */
inline FamilyDocument index_named_family(const std::vector<std::vector<std::string>>& named_sets) {
  FamilyDocument doc;
  std::map<std::string, unsigned> index;
  for (const auto& s : named_sets) {
    std::vector<unsigned> elems;
    for (const auto& name : s) {
      auto [it, inserted] = index.try_emplace(name, static_cast<unsigned>(doc.element_names.size()));
      if (inserted) doc.element_names.push_back(name);
      elems.push_back(it->second);
    }
    std::sort(elems.begin(), elems.end());
    if (std::adjacent_find(elems.begin(), elems.end()) != elems.end())
      throw FormatError("named family: repeated element within a set");
    doc.sets.push_back(std::move(elems));
  }
  if (doc.sets.empty()) throw FormatError("named family: no sets");
  doc.k = doc.sets.front().size();
  for (const auto& s : doc.sets)
    if (s.size() != doc.k) throw FormatError("named family: sets of different sizes");
  doc.ground_set_size = std::max<std::size_t>(1, doc.element_names.size());
  return doc;
}

template <std::size_t W>
SetFamily<W> to_family(const FamilyDocument& doc) {
  std::vector<BitSet<W>> sets;
  sets.reserve(doc.sets.size());
  for (const auto& s : doc.sets) sets.push_back(BitSet<W>::from_elements(s));
  try {
    return SetFamily<W>(GroundSet(doc.ground_set_size), doc.k, std::move(sets));
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("family file: ") + e.what());
  }
}

template <std::size_t W>
nlohmann::json family_to_json(const SetFamily<W>& family,
                              const std::vector<std::string>& element_names = {}) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["ground_set_size"] = family.ground_size();
  j["k"] = family.k();
  auto rows = nlohmann::json::array();
  for (const auto& s : family) rows.push_back(s.elements());
  j["sets"] = std::move(rows);
  if (!element_names.empty()) j["element_names"] = element_names;
  return j;
}

inline FamilyDocument read_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
  return parse_family_document(j);
}

}  // namespace sunflower

#endif  // SUNFLOWER_FAMILY_IO_HPP
