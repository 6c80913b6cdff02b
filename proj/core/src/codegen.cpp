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

#include "nova/codegen.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include "nova/error.hpp"
#include "nova/inliner.hpp"

namespace nova {
namespace detail {
// Generated from templates/python/_runtime.py at build time.
extern const char kRuntimeTemplate[];
extern const std::size_t kRuntimeTemplateSize;
}  // namespace detail

namespace {

constexpr std::string_view kPyprojectTemplate = R"([build-system]
requires = ["setuptools>=61"]
build-backend = "setuptools.build_meta"

[project]
name = "{{name}}"
version = "{{version}}"
description = "{{description}}"
readme = "README.md"
license = { file = "LICENSE" }
requires-python = ">=3.9"
dependencies = []

[tool.setuptools]
packages = ["{{package}}"]
include-package-data = true

[tool.setuptools.package-data]
{{package}} = ["widget.html"]
)";

constexpr std::string_view kInitTemplate = R"("""{{module_doc}}"""

from importlib import resources as _resources

from ._runtime import show as _show

__version__ = "{{version}}"
__all__ = ["{{function}}"]

_EVENT_NAME = "{{event_name}}"
_DISPLAY_NAME = "{{display_name}}"


def _widget_html():
    return _resources.files(__name__).joinpath("widget.html").read_text(encoding="utf-8")


def {{function}}({{signature}}):
    """{{function_doc}}"""
    payload = {{payload}}
    return _show(_widget_html(), payload, _EVENT_NAME, width, height, widget_id, _DISPLAY_NAME)
)";

constexpr std::string_view kReadmeTemplate = R"(# {{package}}

{{description}}

## Install

```bash
{{install}}
```

## Usage

```python
{{usage}}
```

`{{function}}` displays the widget in the output of the current notebook cell.
It accepts these keyword arguments:

{{arguments}}

Each call renders a fresh widget, so the same tool can be opened in several
cells of one notebook. Data flows one way, from the notebook into the widget.

## Publishing

The package is ready for a package index:

```bash
python -m pip install build twine
python -m build
python -m twine upload dist/*
```
)";

constexpr std::string_view kLicenseTemplate =
    R"(TODO: choose a license for {{package}} and replace this file with its full text.
)";

std::string python_literal(std::string_view text) {
  return "\"" + detail::python_string_escape(text) + "\"";
}

// For triple-quoted docstrings: newlines stay literal.
std::string docstring_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '\n') {
      out += c;
    } else {
      out += detail::python_string_escape(std::string_view(&c, 1));
    }
  }
  return out;
}

std::string signature(const PackageSpec& spec) {
  std::string out = "*";
  for (const auto& p : spec.params) {
    out += ", " + p.name;
    if (!p.required) out += "=None";
  }
  out += ", width=" + std::to_string(spec.default_width);
  out += ", height=" + std::to_string(spec.default_height);
  out += ", widget_id=None";
  return out;
}

std::string payload_expression(const PackageSpec& spec) {
  if (spec.params.empty()) return "{}";
  std::string out = "{";
  for (std::size_t i = 0; i < spec.params.size(); ++i) {
    if (i > 0) out += ", ";
    out += python_literal(spec.params[i].name) + ": " + spec.params[i].name;
  }
  return out + "}";
}

std::string function_doc(const BundleConfig& config) {
  const auto& spec = config.package;
  std::string doc = "Display " + config.name + " in a notebook cell.\n\n    Args:\n";
  for (const auto& p : spec.params) {
    doc += "        " + p.name + ": " + (p.doc.empty() ? std::string("Widget input.") : p.doc);
    doc += p.required ? "\n" : " Optional.\n";
  }
  doc += "        width: Widget width in pixels.\n";
  doc += "        height: Widget height in pixels.\n";
  doc += "        widget_id: Optional 8-hex-digit id; a fresh one is drawn when omitted.\n";
  doc += "\n    Returns:\n        A display object rendered by the notebook as the widget.\n    ";
  return docstring_escape(doc);
}

std::string argument_list(const PackageSpec& spec) {
  std::string out;
  for (const auto& p : spec.params) {
    out += "- `" + p.name + "`" + (p.required ? " (required)" : " (optional)");
    if (!p.doc.empty()) out += ": " + p.doc;
    out += "\n";
  }
  out += "- `width`, `height`: widget size in pixels (default " +
         std::to_string(spec.default_width) + " x " + std::to_string(spec.default_height) + ")\n";
  out += "- `widget_id`: optional 8-hex-digit id for the widget's iframe";
  return out;
}

void check_relative_normalized(std::string_view path) {
  auto normalized = normalize_relative(path);
  if (!normalized || *normalized != path) {
    throw CodegenError("package tree path must be relative and normalized: " + std::string(path));
  }
}

}  // namespace

namespace detail {

std::string render_template(std::string_view tpl, const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tpl.size() * 2);
  std::size_t pos = 0;
  while (pos < tpl.size()) {
    const std::size_t open = tpl.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(tpl.substr(pos));
      break;
    }
    out.append(tpl.substr(pos, open - pos));
    const std::size_t close = tpl.find("}}", open + 2);
    if (close == std::string_view::npos) throw CodegenError("unclosed template placeholder");
    const std::string key(tpl.substr(open + 2, close - open - 2));
    auto it = values.find(key);
    if (it == values.end()) throw CodegenError("unknown template placeholder {{" + key + "}}");
    out.append(it->second);
    pos = close + 2;
  }
  return out;
}

std::string toml_escape(std::string_view text) {
  std::string out;
  for (unsigned char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\b': out += "\\b"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\f': out += "\\f"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

std::string python_string_escape(std::string_view text) {
  std::string out;
  for (unsigned char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\x%02x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

}  // namespace detail

void PackageTree::add(std::string_view path, std::string bytes) {
  check_relative_normalized(path);
  if (!files_.emplace(std::string(path), std::move(bytes)).second) {
    throw CodegenError("duplicate package tree path: " + std::string(path));
  }
}

std::vector<std::string> PackageTree::paths() const {
  std::vector<std::string> out;
  out.reserve(files_.size());
  for (const auto& [path, _] : files_) out.push_back(path);
  return out;
}

bool PackageTree::contains(std::string_view path) const {
  return files_.contains(std::string(path));
}

const std::string& PackageTree::at(std::string_view path) const {
  auto it = files_.find(std::string(path));
  if (it == files_.end()) throw CodegenError("no such path in package tree: " + std::string(path));
  return it->second;
}

std::string_view runtime_template() {
  return {detail::kRuntimeTemplate, detail::kRuntimeTemplateSize};
}

std::string render_project_metadata(const PackageSpec& spec) {
  return detail::render_template(kPyprojectTemplate,
                                 {{"name", detail::toml_escape(spec.package_name)},
                                  {"package", spec.package_name},
                                  {"version", detail::toml_escape(spec.version)},
                                  {"description", detail::toml_escape(spec.description)}});
}

std::string usage_snippet(const PackageSpec& spec) {
  std::string args;
  for (const auto& p : spec.params) {
    if (!p.required) continue;
    args += p.name + "={}, ";
  }
  args += "width=" + std::to_string(spec.default_width) +
          ", height=" + std::to_string(spec.default_height);
  return "pip install " + spec.package_name + "\n" +
         "import " + spec.package_name + "\n" +
         "widget = " + spec.package_name + "." + spec.function_name + "(" + args + ")\n" +
         "widget\n";
}

PackageTree scaffold(const BundleConfig& config, std::string_view bundled_html) {
  if (bundled_html.find(kBootstrapMarker) == std::string_view::npos) {
    throw CodegenError("bundled HTML lacks the bootstrap marker " + std::string(kBootstrapMarker) +
                       "; run it through bundle first");
  }
  const auto& spec = config.package;
  if (!is_valid_package_name(spec.package_name)) {
    throw CodegenError("invalid package name: " + spec.package_name);
  }
  const std::string& pkg = spec.package_name;

  const std::string snippet = usage_snippet(spec);
  const std::string install = snippet.substr(0, snippet.find('\n'));
  std::string usage = snippet.substr(install.size() + 1);
  usage.pop_back();

  const std::string description =
      spec.description.empty() ? config.name + " notebook widget." : spec.description;

  PackageTree tree;
  tree.add("pyproject.toml", render_project_metadata(spec));
  tree.add("README.md", detail::render_template(kReadmeTemplate,
                                                {{"package", pkg},
                                                 {"description", description},
                                                 {"install", install},
                                                 {"usage", usage},
                                                 {"function", spec.function_name},
                                                 {"arguments", argument_list(spec)}}));
  tree.add("LICENSE", detail::render_template(kLicenseTemplate, {{"package", pkg}}));
  tree.add(pkg + "/__init__.py",
           detail::render_template(
               kInitTemplate,
               {{"module_doc", docstring_escape(description)},
                {"version", detail::python_string_escape(spec.version)},
                {"function", spec.function_name},
                {"event_name", config.event_name},
                {"display_name", detail::python_string_escape(config.name)},
                {"signature", signature(spec)},
                {"function_doc", function_doc(config)},
                {"payload", payload_expression(spec)}}));
  tree.add(pkg + "/_runtime.py", std::string(runtime_template()));
  tree.add(pkg + "/widget.html", std::string(bundled_html));
  return tree;
}

std::vector<std::filesystem::path> materialize(const PackageTree& tree,
                                               const std::filesystem::path& out_dir,
                                               bool overwrite) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::exists(out_dir, ec)) {
    if (!fs::is_directory(out_dir, ec)) {
      throw CodegenError("output path exists and is not a directory: " + out_dir.string());
    }
    if (!fs::is_empty(out_dir, ec) && !overwrite) {
      throw CodegenError("output directory is not empty: " + out_dir.string() +
                         " (pass --overwrite to replace its files)");
    }
  }

  std::vector<fs::path> written;
  for (const auto& [rel, bytes] : tree.files()) {
    const fs::path target = out_dir / fs::path(rel);
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw CodegenError("cannot create directory " + target.parent_path().string() + ": " +
                               ec.message());
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw CodegenError("failed to write " + target.string());
    written.push_back(target);
  }
  return written;
}

}  // namespace nova
