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

#ifndef NOVA_MODEL_HPP_
#define NOVA_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace nova {

enum class AssetKind {
  kScript,
  kStylesheet,
  kImage,
  kFont,
  kIcon,
  kMedia,
  kCssImport,
  kCssUrl,
  kAssetMapEntry,
};

enum class UrlClass {
  kRelative,
  kAbsoluteRemote,
  kDataUri,
  kFragmentOnly,
  kProtocolRelative,
};

enum class SourceKind { kHtml, kCss };

// Half-open [begin, end) byte range into a source document.
struct ByteSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(const ByteSpan& other) const {
    return begin <= other.begin && other.end <= end;
  }
  bool operator==(const ByteSpan&) const = default;
};

// One reference from markup or a stylesheet to another resource.
//
// `span` covers exactly the URL text as written (so splicing a replacement
// into `span` rewrites the reference and nothing else). `construct` covers the
// enclosing syntax the inliner may need to replace wholesale: the whole
// <script> element, the <link> start tag, or the complete @import rule.
struct AssetRef {
  AssetKind kind = AssetKind::kImage;
  std::string url;
  UrlClass url_class = UrlClass::kRelative;
  SourceKind source = SourceKind::kHtml;
  std::string source_path;
  ByteSpan span;
  std::optional<ByteSpan> construct;

  bool operator==(const AssetRef&) const = default;
};

struct Warning {
  std::string code;
  std::string message;
  std::string location;

  bool operator==(const Warning&) const = default;
};

enum class ViolationRule {
  kExternalScript,
  kExternalStylesheet,
  kExternalImage,
  kExternalFont,
  kExternalOther,
};

struct Violation {
  std::string url;
  std::size_t location = 0;
  ViolationRule rule = ViolationRule::kExternalOther;

  bool operator==(const Violation&) const = default;
};

struct InlinedAsset {
  std::string path;
  AssetKind kind = AssetKind::kImage;
  std::uint64_t bytes_before = 0;
  std::uint64_t bytes_after_encoding = 0;

  bool operator==(const InlinedAsset&) const = default;
};

enum class ExternalReason { kAllowlisted, kRemoteNotAllowlisted };

struct KeptExternal {
  std::string url;
  ExternalReason reason = ExternalReason::kAllowlisted;

  bool operator==(const KeptExternal&) const = default;
};

struct BundleReport {
  std::vector<InlinedAsset> inlined;
  std::vector<KeptExternal> kept_external;
  std::vector<Warning> warnings;
  std::vector<Violation> violations;
  std::uint64_t total_output_bytes = 0;

  bool operator==(const BundleReport&) const = default;
};

// Wire names (lower-kebab-case, as used in report JSON and CLI output).
std::string_view to_string(AssetKind kind);
std::string_view to_string(UrlClass url_class);
std::string_view to_string(SourceKind source);
std::string_view to_string(ViolationRule rule);
std::string_view to_string(ExternalReason reason);

// Report JSON mirrors the BundleReport field names in lower_snake_case.
nlohmann::ordered_json report_to_json(const BundleReport& report);

}  // namespace nova

#endif  // NOVA_MODEL_HPP_
