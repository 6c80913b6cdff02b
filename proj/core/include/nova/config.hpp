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

#ifndef NOVA_CONFIG_HPP_
#define NOVA_CONFIG_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nova/file_provider.hpp"
#include "nova/model.hpp"

namespace nova {

inline constexpr std::string_view kDefaultConfigFile = "nova.config.json";
inline constexpr std::string_view kDefaultEventName = "novaData";

struct ParamSpec {
  std::string name;
  bool required = false;
  std::string doc;

  bool operator==(const ParamSpec&) const = default;
};

struct PackageSpec {
  std::string package_name;
  std::string function_name = "visualize";
  std::string version = "0.1.0";
  std::string description;
  std::vector<ParamSpec> params;
  int default_width = 800;
  int default_height = 600;

  bool operator==(const PackageSpec&) const = default;
};

// Project configuration as read from nova.config.json. `root` and
// `sample_payload` are relative to the config file's directory; `entry` and
// `asset_map` are relative to `root`.
struct BundleConfig {
  std::string name;
  std::string entry;
  std::string root;
  std::string event_name = std::string(kDefaultEventName);
  std::vector<std::string> allow_external;
  std::vector<std::string> asset_map;
  bool inject_fetch_shim = false;
  double max_size_mb = 20;
  PackageSpec package;
  std::optional<std::string> sample_payload;
  // Rendered as a plain link on the demo page when present.
  std::optional<std::string> notebook_url;

  bool operator==(const BundleConfig&) const = default;
};

struct ParsedConfig {
  BundleConfig config;
  std::vector<Warning> warnings;  // unknown keys
};

// Parses and validates configuration JSON. Throws ConfigError naming the
// offending key (and value, where there is one) on any violation.
ParsedConfig parse_config(std::string_view text);

// Canonical form: two-space indented JSON, keys in declaration order.
std::string serialize_config(const BundleConfig& config);

// Checks that the files the config names exist. Missing entry or asset_map
// files throw ConfigError; a missing sample_payload only warns.
std::vector<Warning> validate_paths(const BundleConfig& config, const FileProvider& files);

// Validation predicates shared with the protocol and codegen layers.
bool is_valid_event_name(std::string_view name);
bool is_valid_package_name(std::string_view name);
bool is_valid_param_name(std::string_view name);
bool is_python_keyword(std::string_view name);

// Lexically normalizes a root-relative path. Returns nullopt when the path is
// empty, absolute, or escapes its root through ".." segments.
std::optional<std::string> normalize_relative(std::string_view path);

}  // namespace nova

#endif  // NOVA_CONFIG_HPP_
