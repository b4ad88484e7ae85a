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

#include "qcivet/canonical.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <memory>

#include "qcivet/error.hpp"

namespace qcivet {

namespace {

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      len = 2;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3f);
    }
    // Overlong forms, surrogates and out-of-range code points.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || cp > 0x10ffff ||
        (cp >= 0xd800 && cp <= 0xdfff)) {
      return false;
    }
    i += len;
  }
  return true;
}

void append_string(std::string& out, std::string_view s) {
  if (!valid_utf8(s)) throw InvalidArgument("canonical_json: invalid UTF-8 string");
  static constexpr char kHex[] = "0123456789abcdef";
  out.push_back('"');
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          out += "\\u00";
          out.push_back(kHex[c >> 4]);
          out.push_back(kHex[c & 0xf]);
        } else {
          out.push_back(ch);
        }
    }
  }
  out.push_back('"');
}

void append_double(std::string& out, double x) {
  if (!std::isfinite(x)) {
    throw InvalidArgument("canonical_json: non-finite number");
  }
  std::array<char, 512> buf{};
  std::to_chars_result res;
  const bool integral = x == std::trunc(x);
  if (integral) {
    res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                        std::chars_format::fixed, 0);
  } else {
    res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  }
  if (res.ec != std::errc()) throw InvalidArgument("canonical_json: number too long");
  out.append(buf.data(), res.ptr);
  if (integral) out += ".0";
}

void append_value(std::string& out, const Json& v) {
  switch (v.type()) {
    case Json::value_t::null:
      out += "null";
      break;
    case Json::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::number_integer:
      out += std::to_string(v.get<std::int64_t>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(v.get<std::uint64_t>());
      break;
    case Json::value_t::number_float:
      append_double(out, v.get<double>());
      break;
    case Json::value_t::string:
      append_string(out, v.get_ref<const std::string&>());
      break;
    case Json::value_t::array: {
      out.push_back('[');
      bool first = true;
      for (const Json& e : v) {
        if (!first) out.push_back(',');
        first = false;
        append_value(out, e);
      }
      out.push_back(']');
      break;
    }
    case Json::value_t::object: {
      // object_t is a std::map with std::less<>: iteration is byte order.
      out.push_back('{');
      bool first = true;
      for (const auto& [key, e] : v.get_ref<const Json::object_t&>()) {
        if (!first) out.push_back(',');
        first = false;
        append_string(out, key);
        out.push_back(':');
        append_value(out, e);
      }
      out.push_back('}');
      break;
    }
    default:
      throw InvalidArgument("canonical_json: unsupported JSON value type");
  }
}

void validate_spec_value(const Json& v) {
  switch (v.type()) {
    case Json::value_t::number_float:
      if (!std::isfinite(v.get<double>())) {
        throw InvalidArgument("StageSpec: non-finite number");
      }
      break;
    case Json::value_t::array:
    case Json::value_t::object:
      for (const Json& e : v) validate_spec_value(e);
      break;
    case Json::value_t::binary:
    case Json::value_t::discarded:
      throw InvalidArgument("StageSpec: unsupported value type");
    default:
      break;
  }
}

}  // namespace

std::string canonical_json(const Json& value) {
  std::string out;
  append_value(out, value);
  return out;
}

StageSpec::StageSpec(Json value) : value_(std::move(value)) {
  if (!value_.is_object()) throw InvalidArgument("StageSpec: must be a JSON object");
  validate_spec_value(value_);
}

StageSpec::StageSpec(std::initializer_list<Json::object_t::value_type> entries)
    : value_(Json::object()) {
  for (const auto& [k, v] : entries) set(k, v);
}

StageSpec StageSpec::parse(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {  // syntax errors and number overflow
    throw InvalidArgument(std::string("StageSpec::parse: ") + e.what());
  }
  return StageSpec(std::move(j));
}

StageSpec& StageSpec::set(const std::string& key, Json value) {
  validate_spec_value(value);
  value_[key] = std::move(value);
  return *this;
}

std::string canonicalize(const StageSpec& spec) { return canonical_json(spec.json()); }

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("sha256_hex: digest computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

bool is_hex_digest(std::string_view s) noexcept {
  if (s.size() != 64) return false;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

}  // namespace qcivet
