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

#ifndef NOVA_INLINER_HPP_
#define NOVA_INLINER_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nova/config.hpp"
#include "nova/file_provider.hpp"
#include "nova/model.hpp"

namespace nova {

inline constexpr std::string_view kBootstrapMarker = "<!--NOVA:BOOTSTRAP-->";
inline constexpr std::string_view kAssetMapGlobal = "__NOVA_ASSETS__";
inline constexpr std::string_view kAssetMapScriptId = "nova-asset-map";
inline constexpr std::string_view kFetchShimScriptId = "nova-fetch-shim";
inline constexpr std::string_view kCycleComment = "/*nova:cycle*/";

struct BundleResult {
  std::string html;
  BundleReport report;
};

// Produces a single self-contained HTML document from the configured entry
// and everything it references under root. Remote URLs are never fetched.
// Throws BundleError for missing files and references that escape root.
BundleResult bundle(const BundleConfig& config, const FileProvider& files);

struct MimeType {
  std::string mime;
  bool known = true;
};

MimeType infer_mime(std::string_view path);

std::string base64_encode(std::string_view bytes);
std::string to_data_uri(std::string_view bytes, std::string_view mime);

// Reports every relative, absolute-remote or protocol-relative reference left
// in `html` (inline <style> contents included) that no allowlist prefix covers.
std::vector<Violation> check(std::string_view html, std::span<const std::string> allow_external);

// The fetch interceptor installed when inject_fetch_shim is set. It answers
// fetch() calls whose URL string equals an asset-map key (optionally with a
// leading "./") from the asset map and defers to the native fetch otherwise.
std::string_view fetch_shim_script();

}  // namespace nova

#endif  // NOVA_INLINER_HPP_
