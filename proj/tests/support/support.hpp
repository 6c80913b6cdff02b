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

#ifndef NOVA_TESTS_SUPPORT_HPP_
#define NOVA_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "nova/config.hpp"
#include "nova/file_provider.hpp"

namespace nova::testing {

std::filesystem::path source_dir();
std::filesystem::path fixture_dir();

std::string read_file(const std::filesystem::path& path);

// The toygraph fixture config, parsed; paths relative to fixture_dir().
BundleConfig fixture_config();
DiskFileProvider fixture_files();

// Minimal config for in-memory projects rooted at "app".
BundleConfig memory_config(std::string entry = "index.html");

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Independent base64 decoder (RFC 4648 alphabet, padding required).
std::optional<std::string> base64_decode(std::string_view text);

// Random JSON values biased toward strings that stress HTML/JS embedding:
// "</script>", "<!--", quotes, backslashes, control and astral characters.
class JsonFuzzer {
 public:
  explicit JsonFuzzer(std::uint32_t seed) : rng_(seed) {}

  nlohmann::ordered_json value(int depth = 0);
  std::string string();

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  std::mt19937 rng_;
};

struct ExtractedBootstrap {
  std::string script_body;
  std::string payload_json;
  std::string event_name;
  std::string widget_id;
};

// Oracle for the payload round trip: unescapes the srcdoc of a rendered
// iframe, locates the bootstrap script and slices out the payload JSON text.
// Written against the wire format only, not against the implementation.
std::optional<ExtractedBootstrap> extract_bootstrap(std::string_view iframe_fragment);

// Recursive content hash of a directory: relative path -> SHA-256 hex.
std::map<std::string, std::string> hash_tree(const std::filesystem::path& dir);

}  // namespace nova::testing

#endif  // NOVA_TESTS_SUPPORT_HPP_
