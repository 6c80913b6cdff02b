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

#ifndef NOVA_FILE_PROVIDER_HPP_
#define NOVA_FILE_PROVIDER_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace nova {

// Read-only view of a project tree. Paths are interpreted relative to the
// provider's base (for configs: the directory holding nova.config.json).
class FileProvider {
 public:
  virtual ~FileProvider() = default;

  virtual std::optional<std::string> read(const std::filesystem::path& path) const = 0;
  virtual bool is_file(const std::filesystem::path& path) const = 0;
};

class DiskFileProvider final : public FileProvider {
 public:
  explicit DiskFileProvider(std::filesystem::path base = {});

  std::optional<std::string> read(const std::filesystem::path& path) const override;
  bool is_file(const std::filesystem::path& path) const override;

  const std::filesystem::path& base() const { return base_; }

 private:
  std::filesystem::path resolve(const std::filesystem::path& path) const;

  std::filesystem::path base_;
};

// In-memory tree keyed by lexically normalized generic paths. Used by tests
// and benchmarks to build synthetic projects without touching disk.
class MemoryFileProvider final : public FileProvider {
 public:
  void add(const std::filesystem::path& path, std::string bytes);

  std::optional<std::string> read(const std::filesystem::path& path) const override;
  bool is_file(const std::filesystem::path& path) const override;

  const std::map<std::string, std::string>& files() const { return files_; }

 private:
  static std::string key(const std::filesystem::path& path);

  std::map<std::string, std::string> files_;
};

}  // namespace nova

#endif  // NOVA_FILE_PROVIDER_HPP_
