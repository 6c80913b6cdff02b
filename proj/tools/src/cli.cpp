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

#include "nova/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>

#include <nlohmann/json.hpp>

#include "nova/codegen.hpp"
#include "nova/config.hpp"
#include "nova/conformance.hpp"
#include "nova/demo.hpp"
#include "nova/error.hpp"
#include "nova/inliner.hpp"

namespace nova::cli {
namespace {

namespace fs = std::filesystem;

// Resolves paths against a directory of another provider (the config file's
// directory), so project paths in the config stay relative to it.
class SubdirFileProvider final : public FileProvider {
 public:
  SubdirFileProvider(const FileProvider& base, fs::path dir) : base_(base), dir_(std::move(dir)) {}

  std::optional<std::string> read(const fs::path& path) const override {
    return base_.read(resolve(path));
  }
  bool is_file(const fs::path& path) const override { return base_.is_file(resolve(path)); }

 private:
  fs::path resolve(const fs::path& path) const {
    if (dir_.empty() || path.is_absolute()) return path;
    return dir_ / path;
  }

  const FileProvider& base_;
  fs::path dir_;
};

struct Options {
  std::string config = std::string(kDefaultConfigFile);
  std::string output;
  std::string report_json;
  std::string from_bundle;
  bool overwrite = false;
  std::string check_file;
  std::vector<std::string> allow;
};

struct Project {
  BundleConfig config;
  fs::path dir;
};

void print_warnings(const std::vector<Warning>& warnings, std::ostream& err) {
  for (const auto& w : warnings) {
    err << "warning: [" << w.code << "] " << w.message;
    if (!w.location.empty()) err << " (" << w.location << ")";
    err << "\n";
  }
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error("failed to write " + path.string());
}

Project load_project(const std::string& config_path, const FileProvider& files,
                     std::ostream& err) {
  auto text = files.read(config_path);
  if (!text) throw ConfigError("config file not found: " + config_path);
  auto parsed = parse_config(*text);
  print_warnings(parsed.warnings, err);
  Project project{std::move(parsed.config), fs::path(config_path).parent_path()};
  SubdirFileProvider project_files(files, project.dir);
  print_warnings(validate_paths(project.config, project_files), err);
  return project;
}

// The bundle for scaffold/demo/vectors: rebuilt from the config unless a
// prebuilt one is given.
std::string obtain_bundle(const Project& project, const Options& opts, const FileProvider& files,
                          std::ostream& out, std::ostream& err) {
  if (!opts.from_bundle.empty()) {
    auto html = files.read(opts.from_bundle);
    if (!html) throw Error("bundle file not found: " + opts.from_bundle);
    return *html;
  }
  SubdirFileProvider project_files(files, project.dir);
  auto result = bundle(project.config, project_files);
  print_warnings(result.report.warnings, err);
  if (!opts.report_json.empty()) {
    write_file(opts.report_json, report_to_json(result.report).dump(2) + "\n");
    out << "wrote " << opts.report_json << "\n";
  }
  return std::move(result.html);
}

int cmd_bundle(const Options& opts, const FileProvider& files, std::ostream& out,
               std::ostream& err) {
  const Project project = load_project(opts.config, files, err);
  SubdirFileProvider project_files(files, project.dir);
  auto result = bundle(project.config, project_files);
  print_warnings(result.report.warnings, err);

  const fs::path target = opts.output.empty() ? fs::path(project.config.name + ".bundle.html")
                                              : fs::path(opts.output);
  write_file(target, result.html);
  if (!opts.report_json.empty()) {
    write_file(opts.report_json, report_to_json(result.report).dump(2) + "\n");
    out << "wrote " << opts.report_json << "\n";
  }
  out << "wrote " << target.generic_string() << " (" << result.report.total_output_bytes
      << " bytes, " << result.report.inlined.size() << " assets inlined, "
      << result.report.warnings.size() << " warnings)\n";
  return kSuccess;
}

int cmd_scaffold(const Options& opts, const FileProvider& files, std::ostream& out,
                 std::ostream& err) {
  const Project project = load_project(opts.config, files, err);
  const std::string html = obtain_bundle(project, opts, files, out, err);
  const auto tree = scaffold(project.config, html);
  const fs::path dir =
      opts.output.empty() ? fs::path(project.config.package.package_name) : fs::path(opts.output);
  const auto written = materialize(tree, dir, opts.overwrite);
  out << "wrote " << dir.generic_string() << " (" << written.size() << " files)\n";
  return kSuccess;
}

int cmd_demo(const Options& opts, const FileProvider& files, std::ostream& out,
             std::ostream& err) {
  const Project project = load_project(opts.config, files, err);
  const std::string html = obtain_bundle(project, opts, files, out, err);

  std::optional<nlohmann::ordered_json> sample;
  if (project.config.sample_payload) {
    SubdirFileProvider project_files(files, project.dir);
    if (auto text = project_files.read(*project.config.sample_payload)) {
      try {
        sample = nlohmann::ordered_json::parse(*text);
      } catch (const nlohmann::ordered_json::parse_error& e) {
        throw ConfigError("sample_payload " + *project.config.sample_payload +
                          " is not valid JSON: " + e.what());
      }
    }
  }

  const auto tree = generate_demo(project.config, html, sample);
  const fs::path dir = opts.output.empty() ? fs::path("demo-site") : fs::path(opts.output);
  materialize(tree, dir, opts.overwrite);
  out << "wrote " << (dir / fs::path(kDemoPagePath)).generic_string() << "\n";
  return kSuccess;
}

int cmd_check(const Options& opts, const FileProvider& files, std::ostream& out) {
  auto html = files.read(opts.check_file);
  if (!html) throw Error("file not found: " + opts.check_file);
  const auto violations = check(*html, opts.allow);
  for (const auto& v : violations) {
    out << to_string(v.rule) << '\t' << v.url << '\t' << v.location << '\n';
  }
  return violations.empty() ? kSuccess : kViolations;
}

int cmd_vectors(const Options& opts, const FileProvider& files, std::ostream& out,
                std::ostream& err) {
  std::string html;
  if (!opts.from_bundle.empty()) {
    auto text = files.read(opts.from_bundle);
    if (!text) throw Error("bundle file not found: " + opts.from_bundle);
    html = std::move(*text);
  } else {
    html = obtain_bundle(load_project(opts.config, files, err), opts, files, out, err);
  }
  const std::string json = conformance_vectors_json(conformance_vectors(html));
  if (opts.output.empty()) {
    out << json;
  } else {
    write_file(opts.output, json);
    out << "wrote " << opts.output << "\n";
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, const FileProvider& files, std::ostream& out,
        std::ostream& err) {
  Options opts;
  CLI::App app{"Bundle a static web app into a single HTML file and a notebook widget package",
               "nova"};
  app.require_subcommand(1, 1);

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("-c,--config", opts.config, "Project config file")
        ->capture_default_str();
  };

  auto* bundle_cmd = app.add_subcommand("bundle", "Write the single-file HTML bundle");
  add_config(bundle_cmd);
  bundle_cmd->add_option("-o,--output", opts.output, "Output file (default <name>.bundle.html)");
  bundle_cmd->add_option("--report-json", opts.report_json, "Write the bundle report as JSON");

  auto* scaffold_cmd = app.add_subcommand("scaffold", "Generate the widget package");
  add_config(scaffold_cmd);
  scaffold_cmd->add_option("-o,--output", opts.output, "Output directory (default <package_name>/)");
  scaffold_cmd->add_flag("--overwrite", opts.overwrite, "Replace files in a non-empty directory");
  scaffold_cmd->add_option("--report-json", opts.report_json, "Write the bundle report as JSON");
  scaffold_cmd->add_option("--from-bundle", opts.from_bundle, "Use a prebuilt bundle file");

  auto* demo_cmd = app.add_subcommand("demo", "Generate the static demo page");
  add_config(demo_cmd);
  demo_cmd->add_option("-o,--output", opts.output, "Output directory (default demo-site/)");
  demo_cmd->add_flag("--overwrite", opts.overwrite, "Replace files in a non-empty directory");
  demo_cmd->add_option("--report-json", opts.report_json, "Write the bundle report as JSON");
  demo_cmd->add_option("--from-bundle", opts.from_bundle, "Use a prebuilt bundle file");

  auto* check_cmd = app.add_subcommand("check", "List references that keep an HTML file from being self-contained");
  check_cmd->add_option("file", opts.check_file, "HTML file to check")->required();
  check_cmd->add_option("--allow", opts.allow, "URL prefix allowed to stay external (repeatable)")
      ->allow_extra_args(false);

  auto* vectors_cmd = app.add_subcommand("vectors", "Emit runtime conformance vectors as JSON");
  add_config(vectors_cmd);
  vectors_cmd->add_option("-o,--output", opts.output, "Output file (default stdout)");
  vectors_cmd->add_option("--from-bundle", opts.from_bundle, "Use a prebuilt bundle file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kFailure;
  }

  try {
    if (*bundle_cmd) return cmd_bundle(opts, files, out, err);
    if (*scaffold_cmd) return cmd_scaffold(opts, files, out, err);
    if (*demo_cmd) return cmd_demo(opts, files, out, err);
    if (*check_cmd) return cmd_check(opts, files, out);
    if (*vectors_cmd) return cmd_vectors(opts, files, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  err << app.help();
  return kFailure;
}

}  // namespace nova::cli
