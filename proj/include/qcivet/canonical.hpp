// Copyright 2026 The QCIVET Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Canonical JSON and the stage spec record it serialises.
//
// Canonical form (bit-exact, the hash preimage depends on it):
//   * objects: keys sorted by unsigned byte order at every level, no
//     whitespace anywhere;
//   * integers: plain decimal digits, optional leading '-';
//   * floating point: integral values in fixed notation with a trailing
//     ".0" (never an exponent); other values in the shortest representation
//     that round-trips (std::to_chars), e.g. 0.1, 1e-07, 1.5e+300;
//     NaN and infinities are rejected;
//   * strings: UTF-8 as-is, escaping only '"', '\\' and control characters
//     below 0x20 (\b \f \n \r \t, otherwise \u00xx lowercase).

#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace qcivet {

using Json = nlohmann::json;

/// Canonical serialisation of any JSON value. Throws InvalidArgument on
/// non-finite numbers, invalid UTF-8, or discarded/binary values.
std::string canonical_json(const Json& value);

/// Ordered string-keyed record of the parameters that determine a stage's
/// behaviour. Always a JSON object.
class StageSpec {
 public:
  StageSpec() : value_(Json::object()) {}
  /// Throws InvalidArgument unless `value` is an object free of non-finite
  /// numbers.
  explicit StageSpec(Json value);
  StageSpec(std::initializer_list<Json::object_t::value_type> entries);

  /// Parses JSON text (must be an object).
  static StageSpec parse(std::string_view text);

  const Json& json() const noexcept { return value_; }

  /// Set one top-level entry, validating the value.
  StageSpec& set(const std::string& key, Json value);
  bool contains(const std::string& key) const { return value_.contains(key); }
  const Json& at(const std::string& key) const { return value_.at(key); }

  friend bool operator==(const StageSpec& a, const StageSpec& b) {
    return a.value_ == b.value_;
  }

 private:
  Json value_;
};

/// UTF-8 bytes of canonical_json(spec).
std::string canonicalize(const StageSpec& spec);

/// Lowercase hex SHA-256 digest of `bytes`.
std::string sha256_hex(std::string_view bytes);

/// True for a 64-character lowercase hex string.
bool is_hex_digest(std::string_view s) noexcept;

}  // namespace qcivet
