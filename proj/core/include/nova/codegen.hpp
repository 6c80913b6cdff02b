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

#ifndef NOVA_CODEGEN_HPP_
#define NOVA_CODEGEN_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nova/config.hpp"

namespace nova {

// Relative path -> file bytes, ordered lexicographically by path.
class PackageTree {
 public:
  // Throws CodegenError for absolute, non-normalized or duplicate paths.
  void add(std::string_view path, std::string bytes);

  const std::map<std::string, std::string>& files() const { return files_; }
  std::vector<std::string> paths() const;
  bool contains(std::string_view path) const;
  const std::string& at(std::string_view path) const;

  bool operator==(const PackageTree&) const = default;

 private:
  std::map<std::string, std::string> files_;
};

// Generated Python package: pyproject.toml, README.md, LICENSE and
// <pkg>/{__init__.py,_runtime.py,widget.html}. `bundled_html` must carry the
// bootstrap marker.
PackageTree scaffold(const BundleConfig& config, std::string_view bundled_html);

// pyproject.toml text.
std::string render_project_metadata(const PackageSpec& spec);

// Install line plus the three-line usage example shared by README and demo.
std::string usage_snippet(const PackageSpec& spec);

// Writes the tree under out_dir in tree order and returns the written paths.
// Refuses a non-empty out_dir unless `overwrite`.
std::vector<std::filesystem::path> materialize(const PackageTree& tree,
                                               const std::filesystem::path& out_dir,
                                               bool overwrite);

// The wrapper-runtime template shipped as <pkg>/_runtime.py, embedded at
// build time from templates/python/_runtime.py.
std::string_view runtime_template();

namespace detail {
// `{{key}}` substitution; throws CodegenError on unknown or unclosed keys.
std::string render_template(std::string_view tpl, const std::map<std::string, std::string>& values);
std::string toml_escape(std::string_view text);
std::string python_string_escape(std::string_view text);
}  // namespace detail

}  // namespace nova

#endif  // NOVA_CODEGEN_HPP_
