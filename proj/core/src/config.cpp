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

#include "nova/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <regex>
#include <set>

#include "nova/error.hpp"

namespace nova {
namespace {

using nlohmann::ordered_json;

constexpr std::array<std::string_view, 3> kReservedParamNames = {"width", "height", "widget_id"};

bool is_lower_alpha(char c) { return c >= 'a' && c <= 'z'; }
bool is_alpha(char c) { return is_lower_alpha(c) || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool matches_lower_identifier(std::string_view s) {
  if (s.empty() || !is_lower_alpha(s.front())) return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [](char c) { return is_lower_alpha(c) || is_digit(c) || c == '_'; });
}

bool is_python_identifier(std::string_view s) {
  if (s.empty() || !(is_alpha(s.front()) || s.front() == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [](char c) { return is_alpha(c) || is_digit(c) || c == '_'; });
}

bool is_semver(std::string_view s) {
  static const std::regex kSemver(
      R"(^(0|[1-9][0-9]*)\.(0|[1-9][0-9]*)\.(0|[1-9][0-9]*)(-[0-9A-Za-z.-]+)?(\+[0-9A-Za-z.-]+)?$)");
  return std::regex_match(s.begin(), s.end(), kSemver);
}

std::string quoted(const ordered_json& value) { return value.dump(); }

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError("config key '" + key + "': " + what);
}

[[noreturn]] void fail_value(const std::string& key, const ordered_json& value,
                             const std::string& rule) {
  fail(key, "value " + quoted(value) + " " + rule);
}

class ObjectReader {
 public:
  ObjectReader(const ordered_json& obj, std::string prefix, std::vector<Warning>& warnings)
      : obj_(obj), prefix_(std::move(prefix)), warnings_(warnings) {}

  std::string key(std::string_view name) const { return prefix_ + std::string(name); }

  const ordered_json* get(std::string_view name) {
    seen_.insert(std::string(name));
    auto it = obj_.find(std::string(name));
    return it == obj_.end() ? nullptr : &*it;
  }

  const ordered_json& require(std::string_view name) {
    const auto* v = get(name);
    if (v == nullptr) fail(key(name), "missing required key");
    return *v;
  }

  std::string string(std::string_view name, const ordered_json& v) const {
    if (!v.is_string()) fail_value(key(name), v, "must be a string");
    return v.get<std::string>();
  }

  std::optional<std::string> optional_string(std::string_view name) {
    const auto* v = get(name);
    if (v == nullptr || v->is_null()) return std::nullopt;
    return string(name, *v);
  }

  std::vector<std::string> string_list(std::string_view name) {
    std::vector<std::string> out;
    const auto* v = get(name);
    if (v == nullptr) return out;
    if (!v->is_array()) fail_value(key(name), *v, "must be an array of strings");
    for (const auto& item : *v) {
      if (!item.is_string()) fail_value(key(name), item, "must be a string");
      out.push_back(item.get<std::string>());
    }
    return out;
  }

  std::optional<bool> boolean(std::string_view name) {
    const auto* v = get(name);
    if (v == nullptr) return std::nullopt;
    if (!v->is_boolean()) fail_value(key(name), *v, "must be true or false");
    return v->get<bool>();
  }

  std::optional<int> positive_int(std::string_view name) {
    const auto* v = get(name);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number_integer() || v->get<std::int64_t>() < 1 ||
        v->get<std::int64_t>() > 1'000'000) {
      fail_value(key(name), *v, "must be a positive integer");
    }
    return static_cast<int>(v->get<std::int64_t>());
  }

  void warn_unknown() {
    for (const auto& [k, _] : obj_.items()) {
      if (!seen_.contains(k)) {
        warnings_.push_back({"unknown-config-key",
                             "unknown config key '" + prefix_ + k + "' ignored", key(k)});
      }
    }
  }

 private:
  const ordered_json& obj_;
  std::string prefix_;
  std::vector<Warning>& warnings_;
  std::set<std::string> seen_;
};

std::string relative_path(ObjectReader& r, std::string_view name, const ordered_json& v) {
  std::string raw = r.string(name, v);
  auto normalized = normalize_relative(raw);
  if (!normalized) {
    fail_value(r.key(name), v, "is not a relative path inside root (path escapes root)");
  }
  return raw;
}

ParamSpec parse_param(const ordered_json& v, std::size_t index, std::vector<Warning>& warnings) {
  std::string prefix = "package.params[" + std::to_string(index) + "].";
  if (!v.is_object()) fail_value(prefix.substr(0, prefix.size() - 1), v, "must be an object");
  ObjectReader r(v, prefix, warnings);
  ParamSpec p;
  p.name = r.string("name", r.require("name"));
  if (!is_valid_param_name(p.name)) {
    fail_value(r.key("name"), r.require("name"),
               "must match [a-z][a-z0-9_]* and not be a Python keyword");
  }
  if (std::find(kReservedParamNames.begin(), kReservedParamNames.end(), p.name) !=
      kReservedParamNames.end()) {
    fail_value(r.key("name"), r.require("name"),
               "collides with a reserved name (width, height, widget_id)");
  }
  p.required = r.boolean("required").value_or(false);
  if (auto doc = r.optional_string("doc")) p.doc = *doc;
  r.warn_unknown();
  return p;
}

PackageSpec parse_package(const ordered_json& v, std::vector<Warning>& warnings) {
  if (!v.is_object()) fail_value("package", v, "must be an object");
  ObjectReader r(v, "package.", warnings);
  PackageSpec spec;

  const auto& name = r.require("package_name");
  spec.package_name = r.string("package_name", name);
  if (!is_valid_package_name(spec.package_name)) {
    fail_value(r.key("package_name"), name,
               "must match [a-z][a-z0-9_]* and not be a Python keyword");
  }

  if (const auto* fn = r.get("function_name")) {
    spec.function_name = r.string("function_name", *fn);
    if (!is_python_identifier(spec.function_name) || is_python_keyword(spec.function_name) ||
        spec.function_name.front() == '_') {
      fail_value(r.key("function_name"), *fn,
                 "must be a public Python identifier ([A-Za-z][A-Za-z0-9_]*, not a keyword)");
    }
  }

  if (const auto* ver = r.get("version")) {
    spec.version = r.string("version", *ver);
    if (!is_semver(spec.version)) {
      fail_value(r.key("version"), *ver, "must be a semantic version (MAJOR.MINOR.PATCH)");
    }
  }

  if (auto desc = r.optional_string("description")) spec.description = *desc;

  if (const auto* params = r.get("params")) {
    if (!params->is_array()) fail_value(r.key("params"), *params, "must be an array");
    std::set<std::string> names;
    for (std::size_t i = 0; i < params->size(); ++i) {
      ParamSpec p = parse_param((*params)[i], i, warnings);
      if (!names.insert(p.name).second) {
        fail("package.params[" + std::to_string(i) + "].name",
             "duplicate parameter name \"" + p.name + "\"");
      }
      spec.params.push_back(std::move(p));
    }
  }

  if (auto w = r.positive_int("default_width")) spec.default_width = *w;
  if (auto h = r.positive_int("default_height")) spec.default_height = *h;
  r.warn_unknown();
  return spec;
}

}  // namespace

bool is_python_keyword(std::string_view name) {
  static constexpr std::string_view kKeywords[] = {
      "False", "None",   "True",    "and",      "as",       "assert", "async",  "await",
      "break", "class",  "continue", "def",     "del",      "elif",   "else",   "except",
      "finally", "for",  "from",    "global",   "if",       "import", "in",     "is",
      "lambda", "nonlocal", "not",  "or",       "pass",     "raise",  "return", "try",
      "while", "with",   "yield"};
  return std::find(std::begin(kKeywords), std::end(kKeywords), name) != std::end(kKeywords);
}

bool is_valid_event_name(std::string_view name) {
  if (name.empty() || !is_alpha(name.front())) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return is_alpha(c) || is_digit(c) || c == '_' || c == '-';
  });
}

bool is_valid_package_name(std::string_view name) {
  return matches_lower_identifier(name) && !is_python_keyword(name);
}

bool is_valid_param_name(std::string_view name) {
  return matches_lower_identifier(name) && !is_python_keyword(name);
}

std::optional<std::string> normalize_relative(std::string_view path) {
  if (path.empty() || path.front() == '/' || path.front() == '\\') return std::nullopt;
  if (path.size() >= 2 && path[1] == ':') return std::nullopt;  // drive letter
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (pos <= path.size()) {
    std::size_t next = path.find_first_of("/\\", pos);
    if (next == std::string_view::npos) next = path.size();
    std::string_view seg = path.substr(pos, next - pos);
    if (seg == "..") {
      if (parts.empty()) return std::nullopt;
      parts.pop_back();
    } else if (!seg.empty() && seg != ".") {
      parts.push_back(seg);
    }
    pos = next + 1;
  }
  if (parts.empty()) return std::nullopt;
  std::string out;
  for (const auto& seg : parts) {
    if (!out.empty()) out += '/';
    out += seg;
  }
  return out;
}

ParsedConfig parse_config(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text.begin(), text.end());
  } catch (const ordered_json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("malformed config: top level must be a JSON object");

  ParsedConfig parsed;
  auto& cfg = parsed.config;
  ObjectReader r(doc, "", parsed.warnings);

  const auto& name = r.require("name");
  cfg.name = r.string("name", name);
  if (cfg.name.empty() ||
      std::any_of(cfg.name.begin(), cfg.name.end(), [](char c) {
        return static_cast<unsigned char>(c) < 0x20 || c == '/' || c == '\\';
      })) {
    fail_value("name", name, "must be non-empty and contain no control characters or slashes");
  }

  cfg.entry = relative_path(r, "entry", r.require("entry"));
  cfg.root = r.string("root", r.require("root"));
  if (cfg.root.empty()) fail_value("root", r.require("root"), "must be a non-empty path");

  if (const auto* ev = r.get("event_name")) {
    cfg.event_name = r.string("event_name", *ev);
    if (!is_valid_event_name(cfg.event_name)) {
      fail_value("event_name", *ev, "must match [A-Za-z][A-Za-z0-9_-]*");
    }
  }

  cfg.allow_external = r.string_list("allow_external");
  for (const auto& prefix : cfg.allow_external) {
    if (prefix.empty()) fail("allow_external", "empty prefix would allow every URL");
  }

  if (const auto* am = r.get("asset_map")) {
    if (!am->is_array()) fail_value("asset_map", *am, "must be an array of strings");
    std::set<std::string> seen;
    for (const auto& item : *am) {
      std::string p = relative_path(r, "asset_map", item);
      if (!seen.insert(*normalize_relative(p)).second) {
        fail_value("asset_map", item, "is listed more than once");
      }
      cfg.asset_map.push_back(std::move(p));
    }
  }

  cfg.inject_fetch_shim = r.boolean("inject_fetch_shim").value_or(false);

  if (const auto* mb = r.get("max_size_mb")) {
    if (!mb->is_number() || !std::isfinite(mb->get<double>()) || mb->get<double>() <= 0) {
      fail_value("max_size_mb", *mb, "must be a positive number");
    }
    cfg.max_size_mb = mb->get<double>();
  }

  cfg.package = parse_package(r.require("package"), parsed.warnings);

  if (const auto* sp = r.get("sample_payload"); sp != nullptr && !sp->is_null()) {
    cfg.sample_payload = r.string("sample_payload", *sp);
    if (!normalize_relative(*cfg.sample_payload)) {
      fail_value("sample_payload", *sp, "must be a relative path");
    }
  }
  cfg.notebook_url = r.optional_string("notebook_url");

  r.warn_unknown();
  return parsed;
}

std::string serialize_config(const BundleConfig& config) {
  ordered_json out = ordered_json::object();
  out["name"] = config.name;
  out["entry"] = config.entry;
  out["root"] = config.root;
  out["event_name"] = config.event_name;
  out["allow_external"] = config.allow_external;
  out["asset_map"] = config.asset_map;
  out["inject_fetch_shim"] = config.inject_fetch_shim;
  out["max_size_mb"] = config.max_size_mb;

  const auto& spec = config.package;
  ordered_json pkg = ordered_json::object();
  pkg["package_name"] = spec.package_name;
  pkg["function_name"] = spec.function_name;
  pkg["version"] = spec.version;
  pkg["description"] = spec.description;
  ordered_json params = ordered_json::array();
  for (const auto& p : spec.params) {
    params.push_back({{"name", p.name}, {"required", p.required}, {"doc", p.doc}});
  }
  pkg["params"] = std::move(params);
  pkg["default_width"] = spec.default_width;
  pkg["default_height"] = spec.default_height;
  out["package"] = std::move(pkg);

  if (config.sample_payload) out["sample_payload"] = *config.sample_payload;
  if (config.notebook_url) out["notebook_url"] = *config.notebook_url;
  return out.dump(2) + "\n";
}

std::vector<Warning> validate_paths(const BundleConfig& config, const FileProvider& files) {
  const std::filesystem::path root(config.root);
  std::vector<Warning> warnings;

  auto entry = normalize_relative(config.entry);
  if (!entry) throw ConfigError("config key 'entry': path escapes root: " + config.entry);
  if (!files.is_file(root / *entry)) {
    throw ConfigError("config key 'entry': entry file not found: " +
                      (root / *entry).generic_string());
  }

  for (const auto& item : config.asset_map) {
    auto rel = normalize_relative(item);
    if (!rel) throw ConfigError("config key 'asset_map': path escapes root: " + item);
    if (!files.is_file(root / *rel)) {
      throw ConfigError("config key 'asset_map': asset file not found: \"" + item + "\" (" +
                        (root / *rel).generic_string() + ")");
    }
  }

  if (config.sample_payload && !files.is_file(*config.sample_payload)) {
    warnings.push_back({"missing-sample-payload",
                        "sample_payload file not found: " + *config.sample_payload,
                        "sample_payload"});
  }
  return warnings;
}

}  // namespace nova
