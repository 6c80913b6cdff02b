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

#ifndef NOVA_SCANNER_HPP_
#define NOVA_SCANNER_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nova/model.hpp"

namespace nova {

struct ParseWarning {
  std::size_t offset = 0;
  std::string message;

  bool operator==(const ParseWarning&) const = default;
};

// References in document order. Data URIs and fragment-only URLs are never
// reported.
struct ScanResult {
  std::vector<AssetRef> refs;
  std::vector<ParseWarning> parse_warnings;

  bool operator==(const ScanResult&) const = default;
};

UrlClass classify_url(std::string_view url);

// Covered references: script[src], link[rel~=stylesheet][href],
// link[rel~=icon][href], img[src], img[srcset], source[src], source[srcset],
// video[poster], plus url()/@import inside inline <style> elements. Markup
// inside comments is ignored.
ScanResult scan_html(std::string_view html, std::string_view source_path);

// @import targets (css-import) and url() tokens (css-url).
ScanResult scan_css(std::string_view css, std::string_view source_path);

namespace detail {
// Scans CSS embedded in a larger document: spans are shifted by `base` and the
// refs are tagged with `source`.
void scan_css_into(std::string_view css, std::size_t base, std::string_view source_path,
                   ScanResult& out);
// One entry per candidate URL in a srcset attribute value, as spans relative
// to the start of `value`.
std::vector<ByteSpan> split_srcset(std::string_view value);
}  // namespace detail

}  // namespace nova

#endif  // NOVA_SCANNER_HPP_
