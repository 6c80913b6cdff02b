// Copyright 2026 The NOVA Bundler Authors
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

#include "nova/protocol.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>
#include <random>
#include <unordered_set>

#include "nova/config.hpp"
#include "nova/error.hpp"
#include "nova/html_lexer.hpp"
#include "nova/inliner.hpp"

namespace nova {
namespace {

using nlohmann::ordered_json;

std::string pointer_token(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

void validate_value(const ordered_json& value, const std::string& path) {
  const std::string where = path.empty() ? "/" : path;
  switch (value.type()) {
    case ordered_json::value_t::number_float:
      if (!std::isfinite(value.get<double>())) {
        throw ProtocolError("payload value at " + where + " is not a finite number");
      }
      break;
    case ordered_json::value_t::string:
      if (!valid_utf8(value.get_ref<const std::string&>())) {
        throw ProtocolError("payload string at " + where + " is not valid UTF-8");
      }
      break;
    case ordered_json::value_t::array:
      for (std::size_t i = 0; i < value.size(); ++i) {
        validate_value(value[i], path + "/" + std::to_string(i));
      }
      break;
    case ordered_json::value_t::object:
      for (const auto& [key, child] : value.items()) {
        if (!valid_utf8(key)) {
          throw ProtocolError("payload object key under " + where + " is not valid UTF-8");
        }
        validate_value(child, path + "/" + pointer_token(key));
      }
      break;
    case ordered_json::value_t::binary:
    case ordered_json::value_t::discarded:
      throw ProtocolError("payload value at " + where + " is not representable as JSON");
    default:
      break;
  }
}

std::mutex& id_guard_mutex() {
  static std::mutex m;
  return m;
}

std::unordered_set<std::string>& issued_ids() {
  static std::unordered_set<std::string> ids;
  return ids;
}

}  // namespace

std::string serialize_payload(const ordered_json& data) {
  validate_value(data, "");
  const std::string raw = data.dump();
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '<': out += "\\u003c"; break;
      case '>': out += "\\u003e"; break;
      case '&': out += "\\u0026"; break;
      default: out += c;
    }
  }
  return out;
}

bool is_valid_widget_id(std::string_view id) {
  if (id.size() != 8) return false;
  for (char c : id) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

std::string encode_payload(const PayloadEnvelope& envelope) {
  if (!is_valid_event_name(envelope.event_name)) {
    throw ProtocolError("invalid event name \"" + envelope.event_name +
                        "\": must match [A-Za-z][A-Za-z0-9_-]*");
  }
  if (!is_valid_widget_id(envelope.widget_id)) {
    throw ProtocolError("invalid widget id \"" + envelope.widget_id +
                        "\": must be 8 lowercase hex digits");
  }
  const std::string json = serialize_payload(envelope.data);
  const std::string& ev = envelope.event_name;
  std::string out;
  out.reserve(json.size() + 320);
  out += "<script id=\"";
  out += kBootstrapIdPrefix;
  out += envelope.widget_id;
  out += "\">window.";
  out += kPayloadGlobal;
  out += " = ";
  out += json;
  out += "; window.";
  out += kEventGlobal;
  out += " = \"";
  out += ev;
  out += "\"; window.addEventListener(\"load\", function () { window.dispatchEvent(new CustomEvent(\"";
  out += ev;
  out += "\", { detail: window.";
  out += kPayloadGlobal;
  out += " })); });</script>";
  return out;
}

std::string escape_srcdoc(std::string_view html) {
  std::string out;
  out.reserve(html.size() + html.size() / 16);
  for (char c : html) {
    if (c == '&') {
      out += "&amp;";
    } else if (c == '"') {
      out += "&quot;";
    } else {
      out += c;
    }
  }
  return out;
}

std::string unescape_srcdoc(std::string_view text) {
  // Single left-to-right pass: only the two entities escape_srcdoc produces
  // are decoded, and decoded output is never rescanned.
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 6, "&quot;") == 0) {
      out += '"';
      i += 6;
    } else if (text.compare(i, 5, "&amp;") == 0) {
      out += '&';
      i += 5;
    } else {
      out += text[i++];
    }
  }
  return out;
}

std::string inject_bootstrap(std::string_view html, std::string_view bootstrap) {
  std::string out;
  out.reserve(html.size() + bootstrap.size());
  const std::size_t marker = html.find(kBootstrapMarker);
  if (marker != std::string_view::npos) {
    out.append(html.substr(0, marker));
    out.append(bootstrap);
    out.append(html.substr(marker + kBootstrapMarker.size()));
    return out;
  }
  if (auto head = html::head_open_end(html)) {
    out.append(html.substr(0, *head));
    out.append(bootstrap);
    out.append(html.substr(*head));
    return out;
  }
  out.append(bootstrap);
  out.append(html);
  return out;
}

std::string render_iframe(std::string_view html, const PayloadEnvelope& envelope,
                          const IframeOptions& options) {
  if (options.width < 1 || options.height < 1) {
    throw ProtocolError("iframe width and height must be at least 1 pixel");
  }
  PayloadEnvelope effective = envelope;
  if (options.widget_id) effective.widget_id = *options.widget_id;
  const std::string srcdoc = escape_srcdoc(inject_bootstrap(html, encode_payload(effective)));

  std::string out;
  out.reserve(srcdoc.size() + 160);
  out += "<iframe id=\"";
  out += kWidgetIdPrefix;
  out += effective.widget_id;
  out += "\" srcdoc=\"";
  out += srcdoc;
  out += "\" width=\"";
  out += std::to_string(options.width);
  out += "\" height=\"";
  out += std::to_string(options.height);
  out += "\" frameborder=\"0\" style=\"border:none;\"></iframe>";
  return out;
}

std::uint32_t SystemEntropy::next() {
  thread_local std::random_device device;
  return device();
}

std::string new_widget_id(const std::optional<std::string>& explicit_id, EntropySource& entropy) {
  if (explicit_id) {
    if (!is_valid_widget_id(*explicit_id)) {
      throw ProtocolError("invalid widget id \"" + *explicit_id +
                          "\": must be 8 lowercase hex digits");
    }
    std::lock_guard lock(id_guard_mutex());
    issued_ids().insert(*explicit_id);
    return *explicit_id;
  }
  constexpr int kMaxDraws = 1024;
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(entropy.next()));
    std::string id(buf, 8);
    std::lock_guard lock(id_guard_mutex());
    if (issued_ids().insert(id).second) return id;
  }
  throw ProtocolError("entropy source keeps repeating widget ids");
}

std::string new_widget_id(const std::optional<std::string>& explicit_id) {
  SystemEntropy entropy;
  return new_widget_id(explicit_id, entropy);
}

}  // namespace nova
