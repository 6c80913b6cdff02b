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

#include "nova/file_provider.hpp"

#include <fstream>
#include <iterator>
#include <system_error>
#include <utility>

namespace nova {

DiskFileProvider::DiskFileProvider(std::filesystem::path base) : base_(std::move(base)) {}

std::filesystem::path DiskFileProvider::resolve(const std::filesystem::path& path) const {
  if (base_.empty() || path.is_absolute()) return path;
  return base_ / path;
}

std::optional<std::string> DiskFileProvider::read(const std::filesystem::path& path) const {
  if (!is_file(path)) return std::nullopt;
  std::ifstream in(resolve(path), std::ios::binary);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

bool DiskFileProvider::is_file(const std::filesystem::path& path) const {
  std::error_code ec;
  return std::filesystem::is_regular_file(resolve(path), ec);
}

std::string MemoryFileProvider::key(const std::filesystem::path& path) {
  return path.lexically_normal().generic_string();
}

void MemoryFileProvider::add(const std::filesystem::path& path, std::string bytes) {
  files_[key(path)] = std::move(bytes);
}

std::optional<std::string> MemoryFileProvider::read(const std::filesystem::path& path) const {
  auto it = files_.find(key(path));
  if (it == files_.end()) return std::nullopt;
  return it->second;
}

bool MemoryFileProvider::is_file(const std::filesystem::path& path) const {
  return files_.contains(key(path));
}

}  // namespace nova
