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

#include "nova/model.hpp"

namespace nova {

std::string_view to_string(AssetKind kind) {
  switch (kind) {
    case AssetKind::kScript: return "script";
    case AssetKind::kStylesheet: return "stylesheet";
    case AssetKind::kImage: return "image";
    case AssetKind::kFont: return "font";
    case AssetKind::kIcon: return "icon";
    case AssetKind::kMedia: return "media";
    case AssetKind::kCssImport: return "css-import";
    case AssetKind::kCssUrl: return "css-url";
    case AssetKind::kAssetMapEntry: return "asset-map-entry";
  }
  return "unknown";
}

std::string_view to_string(UrlClass url_class) {
  switch (url_class) {
    case UrlClass::kRelative: return "relative";
    case UrlClass::kAbsoluteRemote: return "absolute-remote";
    case UrlClass::kDataUri: return "data-uri";
    case UrlClass::kFragmentOnly: return "fragment-only";
    case UrlClass::kProtocolRelative: return "protocol-relative";
  }
  return "unknown";
}

std::string_view to_string(SourceKind source) {
  return source == SourceKind::kHtml ? "html" : "css";
}

std::string_view to_string(ViolationRule rule) {
  switch (rule) {
    case ViolationRule::kExternalScript: return "external-script";
    case ViolationRule::kExternalStylesheet: return "external-stylesheet";
    case ViolationRule::kExternalImage: return "external-image";
    case ViolationRule::kExternalFont: return "external-font";
    case ViolationRule::kExternalOther: return "external-other";
  }
  return "unknown";
}

std::string_view to_string(ExternalReason reason) {
  return reason == ExternalReason::kAllowlisted ? "allowlisted" : "remote-not-allowlisted";
}

nlohmann::ordered_json report_to_json(const BundleReport& report) {
  using nlohmann::ordered_json;
  ordered_json out = ordered_json::object();

  ordered_json inlined = ordered_json::array();
  for (const auto& a : report.inlined) {
    inlined.push_back({{"path", a.path},
                       {"kind", to_string(a.kind)},
                       {"bytes_before", a.bytes_before},
                       {"bytes_after_encoding", a.bytes_after_encoding}});
  }
  out["inlined"] = std::move(inlined);

  ordered_json kept = ordered_json::array();
  for (const auto& k : report.kept_external) {
    kept.push_back({{"url", k.url}, {"reason", to_string(k.reason)}});
  }
  out["kept_external"] = std::move(kept);

  ordered_json warnings = ordered_json::array();
  for (const auto& w : report.warnings) {
    warnings.push_back({{"code", w.code}, {"message", w.message}, {"location", w.location}});
  }
  out["warnings"] = std::move(warnings);

  ordered_json violations = ordered_json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"url", v.url}, {"location", v.location}, {"rule", to_string(v.rule)}});
  }
  out["violations"] = std::move(violations);

  out["total_output_bytes"] = report.total_output_bytes;
  return out;
}

}  // namespace nova
