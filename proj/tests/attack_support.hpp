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

// Adversary helpers shared by the chain unit tests and the acceptance suite.

#pragma once

#include <optional>
#include <random>
#include <string>

#include "qcivet/auditchain.hpp"
#include "qcivet/error.hpp"

namespace qcivet::testing {

/// Replaces the character at `pos` of the canonical spec bytes with `c`.
/// Returns nullopt when the result is not a JSON object or decodes to the
/// same spec, since neither can be stored as a changed record.
inline std::optional<StageSpec> mutate_char(const StageSpec& spec, std::size_t pos, char c) {
  std::string bytes = canonicalize(spec);
  if (pos >= bytes.size() || bytes[pos] == c) return std::nullopt;
  bytes[pos] = c;
  try {
    StageSpec out = StageSpec::parse(bytes);
    if (out == spec) return std::nullopt;
    return out;
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

/// A random single-character mutation that yields a different valid spec.
inline StageSpec random_mutation(const StageSpec& spec, std::mt19937_64& g) {
  const std::size_t n = canonicalize(spec).size();
  std::uniform_int_distribution<std::size_t> pos(0, n - 1);
  std::uniform_int_distribution<int> ch(0x20, 0x7e);
  for (;;) {
    if (auto m = mutate_char(spec, pos(g), static_cast<char>(ch(g)))) return *m;
  }
}

/// Offline rewrite: replaces the spec of record `k` and re-links every later
/// record so the whole log is internally consistent again.
inline AuditLog consistent_rewrite(const AuditLog& log, std::size_t k, const StageSpec& spec) {
  AuditLog out;
  const auto& records = log.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    out.append(records[i].stage_name, i == k ? spec : records[i].spec);
  }
  return out;
}

}  // namespace qcivet::testing
