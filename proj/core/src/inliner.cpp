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

#include "nova/inliner.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>
#include <regex>
#include <set>
#include <utility>

#include "nova/error.hpp"
#include "nova/html_lexer.hpp"
#include "nova/protocol.hpp"
#include "nova/scanner.hpp"

namespace nova {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kFetchShim =
    R"JS(<script id="nova-fetch-shim">(function () {
  var assets = window.__NOVA_ASSETS__ || {};
  var nativeFetch = window.fetch ? window.fetch.bind(window) : null;
  if (!nativeFetch) return;
  window.fetch = function (input, init) {
    if (typeof input === "string") {
      var key = input.indexOf("./") === 0 ? input.slice(2) : input;
      if (Object.prototype.hasOwnProperty.call(assets, key)) {
        return nativeFetch(assets[key], init);
      }
    }
    return nativeFetch(input, init);
  };
})();</script>)JS";

// Attributes that stop making sense once the resource is inline.
constexpr std::array<std::string_view, 3> kDroppedScriptAttrs = {"src", "integrity", "crossorigin"};
constexpr std::array<std::string_view, 8> kDroppedLinkAttrs = {
    "rel", "href", "integrity", "crossorigin", "type", "as", "referrerpolicy", "fetchpriority"};

struct Edit {
  ByteSpan span;
  std::string replacement;
};

std::string apply_edits(std::string_view doc, std::vector<Edit> edits) {
  std::stable_sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) {
    return a.span.begin != b.span.begin ? a.span.begin < b.span.begin : a.span.end < b.span.end;
  });
  std::string out;
  out.reserve(doc.size());
  std::size_t pos = 0;
  for (const auto& e : edits) {
    if (e.span.begin < pos) continue;  // overlapping edit; the enclosing one already applied
    out.append(doc.substr(pos, e.span.begin - pos));
    out.append(e.replacement);
    pos = e.span.end;
  }
  out.append(doc.substr(pos));
  return out;
}

bool is_hex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return c - 'A' + 10;
}

std::string percent_decode(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size() && is_hex(s[i + 1]) && is_hex(s[i + 2])) {
      out.push_back(static_cast<char>(hex_value(s[i + 1]) * 16 + hex_value(s[i + 2])));
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

// URLs such as about:blank or javascript:... name no file; they are neither
// inlined nor reported.
bool has_opaque_scheme(std::string_view url) {
  if (url.empty() || !std::isalpha(static_cast<unsigned char>(url.front()))) return false;
  std::size_t i = 1;
  while (i < url.size() && (std::isalnum(static_cast<unsigned char>(url[i])) || url[i] == '+' ||
                            url[i] == '-' || url[i] == '.')) {
    ++i;
  }
  return i < url.size() && url[i] == ':' && i > 1;
}

bool is_remote(UrlClass c) {
  return c == UrlClass::kAbsoluteRemote || c == UrlClass::kProtocolRelative;
}

bool allowlisted(std::string_view url, std::span<const std::string> allow) {
  return std::any_of(allow.begin(), allow.end(),
                     [&](const std::string& prefix) { return url.starts_with(prefix); });
}

std::string strip_bom(std::string text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.erase(0, 3);
  return text;
}

std::string location_of(std::string_view doc, std::string_view path, std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset && i < doc.size(); ++i) {
    if (doc[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::string(path) + ":" + std::to_string(line) + ":" + std::to_string(col);
}

bool imports_relative_module(std::string_view script) {
  static const std::regex kStaticImport(R"(\bimport\b[^'";]*\bfrom\s*['"](\.{1,2})?/)");
  static const std::regex kBareImport(R"(\bimport\s*\(?\s*['"](\.{1,2})?/)");
  const std::string head(script.substr(0, 4096));
  return std::regex_search(head, kStaticImport) || std::regex_search(head, kBareImport);
}

bool unsafe_inline_script(std::string_view text) {
  if (html::ifind(text, "</script") != std::string_view::npos) return true;
  // "<!--" followed by "<script" switches the tokenizer into double-escaped
  // script data, after which "</script>" no longer closes the element.
  return text.find("<!--") != std::string_view::npos &&
         html::ifind(text, "<script") != std::string_view::npos;
}

std::string kept_attributes(std::string_view doc, const html::StartTag& tag,
                            std::span<const std::string_view> dropped) {
  std::string out;
  for (const auto& attr : tag.attributes) {
    if (std::find(dropped.begin(), dropped.end(), attr.name) != dropped.end()) continue;
    out += ' ';
    out += doc.substr(attr.span.begin, attr.span.size());
  }
  return out;
}

std::string parent_dir(std::string_view rel_path) {
  const auto slash = rel_path.rfind('/');
  return slash == std::string_view::npos ? std::string() : std::string(rel_path.substr(0, slash));
}

class Bundler {
 public:
  Bundler(const BundleConfig& config, const FileProvider& files)
      : config_(config), files_(files), root_(config.root) {}

  BundleResult run() {
    auto entry = normalize_relative(config_.entry);
    if (!entry) throw BundleError("entry path escapes root: " + config_.entry);
    auto html = files_.read(root_ / *entry);
    if (!html) {
      throw BundleError("entry file not found: " + (root_ / *entry).generic_string());
    }

    BundleResult result;
    result.html = process_html(*html, *entry);
    result.report = std::move(report_);
    result.report.total_output_bytes = result.html.size();

    const double limit = config_.max_size_mb * 1024.0 * 1024.0;
    if (static_cast<double>(result.report.total_output_bytes) > limit) {
      result.report.warnings.push_back(
          {"bundle-too-large",
           "bundle is " + std::to_string(result.report.total_output_bytes) +
               " bytes, above max_size_mb; notebook front-ends may refuse or truncate it",
           *entry});
    }
    return result;
  }

 private:
  struct Resolved {
    std::string path;  // root-relative, normalized
    std::string bytes;
  };

  void warn(std::string code, std::string message, std::string location) {
    report_.warnings.push_back({std::move(code), std::move(message), std::move(location)});
  }

  // Resolves `url` as written in a document living in `doc_dir`. Returns
  // nullopt for references that name no file (empty path after stripping the
  // query and fragment).
  std::optional<std::string> resolve(std::string_view url, SourceKind source,
                                     std::string_view doc_dir, const std::string& location) {
    std::string_view path = url;
    path = path.substr(0, path.find_first_of("?#"));
    std::string decoded(path);
    if (source == SourceKind::kHtml) decoded = replace_all(decoded, "&amp;", "&");
    decoded = percent_decode(decoded);
    if (decoded.empty()) {
      warn("self-reference", "reference \"" + std::string(url) + "\" names no file; left as is",
           location);
      return std::nullopt;
    }
    std::string joined;
    if (decoded.front() == '/') {
      joined = decoded.substr(1);
    } else {
      joined = doc_dir.empty() ? decoded : std::string(doc_dir) + "/" + decoded;
    }
    auto normalized = normalize_relative(joined);
    if (!normalized) {
      throw BundleError("asset \"" + std::string(url) + "\" referenced at " + location +
                        " resolves outside root");
    }
    return normalized;
  }

  std::string read(const std::string& rel, std::string_view url, const std::string& location) {
    auto bytes = files_.read(root_ / rel);
    if (!bytes) {
      throw BundleError("missing asset file " + (root_ / rel).generic_string() + " (\"" +
                        std::string(url) + "\" referenced at " + location + ")");
    }
    return std::move(*bytes);
  }

  std::string mime_for(const std::string& path) {
    auto mime = infer_mime(path);
    if (!mime.known) {
      warn("unknown-mime", "unknown file extension; using " + mime.mime, path);
    }
    return mime.mime;
  }

  void record_external(const AssetRef& ref, const std::string& location) {
    if (allowlisted(ref.url, config_.allow_external)) {
      report_.kept_external.push_back({ref.url, ExternalReason::kAllowlisted});
    } else {
      report_.kept_external.push_back({ref.url, ExternalReason::kRemoteNotAllowlisted});
      warn("remote-not-allowlisted",
           "remote reference \"" + ref.url + "\" is not covered by allow_external and will be "
           "fetched at run time",
           location);
    }
  }

  // Shared handling for url()/@import references inside CSS, whether the CSS
  // is a stylesheet file or an inline <style> element.
  void handle_css_ref(const AssetRef& ref, std::string_view doc, std::string_view doc_path,
                      const std::vector<std::string>& chain, std::vector<Edit>& edits) {
    const std::string location = location_of(doc, doc_path, ref.span.begin);
    auto target = resolve(ref.url, SourceKind::kCss, parent_dir(doc_path), location);
    if (!target) return;

    if (ref.kind == AssetKind::kCssImport) {
      if (std::find(chain.begin(), chain.end(), *target) != chain.end()) {
        warn("css-import-cycle", "@import of " + *target + " closes a cycle; dropped", location);
        edits.push_back({ref.construct.value_or(ref.span), std::string(kCycleComment)});
        return;
      }
      const std::string bytes = read(*target, ref.url, location);
      std::vector<std::string> nested_chain = chain;
      nested_chain.push_back(*target);
      const std::string css = process_css(strip_bom(bytes), *target, nested_chain);
      std::string uri = to_data_uri(css, "text/css");
      report_.inlined.push_back({*target, ref.kind, bytes.size(), uri.size()});
      edits.push_back({ref.span, std::move(uri)});
      return;
    }

    const std::string bytes = read(*target, ref.url, location);
    std::string uri = to_data_uri(bytes, mime_for(*target));
    report_.inlined.push_back({*target, ref.kind, bytes.size(), uri.size()});
    edits.push_back({ref.span, std::move(uri)});
  }

  std::string process_css(const std::string& css, const std::string& path,
                          const std::vector<std::string>& chain) {
    const auto scan = scan_css(css, path);
    for (const auto& w : scan.parse_warnings) {
      warn("parse", w.message, location_of(css, path, w.offset));
    }
    std::vector<Edit> edits;
    for (const auto& ref : scan.refs) {
      const std::string location = location_of(css, path, ref.span.begin);
      if (is_remote(ref.url_class)) {
        record_external(ref, location);
      } else if (!has_opaque_scheme(ref.url)) {
        handle_css_ref(ref, css, path, chain, edits);
      }
    }
    return apply_edits(css, std::move(edits));
  }

  void handle_script(const AssetRef& ref, std::string_view html, const std::string& doc_path,
                     std::vector<Edit>& edits) {
    const std::string location = location_of(html, doc_path, ref.span.begin);
    auto target = resolve(ref.url, SourceKind::kHtml, parent_dir(doc_path), location);
    if (!target) return;
    const std::string bytes = read(*target, ref.url, location);
    const std::string text = strip_bom(bytes);
    auto tag = html::parse_start_tag(html, ref.construct->begin);

    const auto* type = tag->find("type");
    const bool is_module = type != nullptr && html::iequals(type->value, "module");
    const bool deferred_classic = !is_module && tag->find("defer") != nullptr;
    const std::string attrs = kept_attributes(html, *tag, kDroppedScriptAttrs);

    if (imports_relative_module(text)) {
      warn("es-module-import",
           *target + " appears to import relative ES modules; bundle the app into "
                     "self-contained scripts first",
           location);
    }

    std::string replacement;
    std::uint64_t encoded_size;
    if (unsafe_inline_script(text) || deferred_classic) {
      std::string uri = to_data_uri(text, "text/javascript");
      encoded_size = uri.size();
      replacement = "<script" + attrs + " src=\"" + uri + "\"></script>";
      warn("script-data-uri",
           *target + (deferred_classic ? " is a deferred classic script"
                                       : " contains a sequence that cannot appear inline") +
               "; embedded as a base64 data URI",
           location);
    } else {
      encoded_size = text.size();
      replacement = "<script" + attrs + ">" + text + "</script>";
    }
    report_.inlined.push_back({*target, ref.kind, bytes.size(), encoded_size});
    edits.push_back({*ref.construct, std::move(replacement)});
  }

  void handle_stylesheet(const AssetRef& ref, std::string_view html, const std::string& doc_path,
                         std::vector<Edit>& edits) {
    const std::string location = location_of(html, doc_path, ref.span.begin);
    auto target = resolve(ref.url, SourceKind::kHtml, parent_dir(doc_path), location);
    if (!target) return;
    const std::string bytes = read(*target, ref.url, location);
    const std::string css = process_css(strip_bom(bytes), *target, {*target});
    auto tag = html::parse_start_tag(html, ref.construct->begin);
    const std::string attrs = kept_attributes(html, *tag, kDroppedLinkAttrs);

    std::string replacement;
    std::uint64_t encoded_size;
    if (html::ifind(css, "</style") != std::string_view::npos) {
      std::string uri = to_data_uri(css, "text/css");
      encoded_size = uri.size();
      replacement = "<link rel=\"stylesheet\"" + attrs + " href=\"" + uri + "\">";
    } else {
      encoded_size = css.size();
      replacement = "<style" + attrs + ">" + css + "</style>";
    }
    report_.inlined.push_back({*target, ref.kind, bytes.size(), encoded_size});
    edits.push_back({*ref.construct, std::move(replacement)});
  }

  void handle_binary(const AssetRef& ref, std::string_view html, const std::string& doc_path,
                     std::vector<Edit>& edits) {
    const std::string location = location_of(html, doc_path, ref.span.begin);
    auto target = resolve(ref.url, SourceKind::kHtml, parent_dir(doc_path), location);
    if (!target) return;
    const std::string bytes = read(*target, ref.url, location);
    std::string uri = to_data_uri(bytes, mime_for(*target));
    report_.inlined.push_back({*target, ref.kind, bytes.size(), uri.size()});
    edits.push_back({ref.span, std::move(uri)});
  }

  std::string asset_map_script() {
    nlohmann::ordered_json assets = nlohmann::ordered_json::object();
    for (const auto& item : config_.asset_map) {
      auto rel = normalize_relative(item);
      if (!rel) throw BundleError("asset_map path escapes root: " + item);
      const std::string bytes = read(*rel, item, "asset_map");
      std::string uri = to_data_uri(bytes, mime_for(*rel));
      report_.inlined.push_back({*rel, AssetKind::kAssetMapEntry, bytes.size(), uri.size()});
      assets[item] = std::move(uri);
    }
    return "<script id=\"" + std::string(kAssetMapScriptId) + "\">window." +
           std::string(kAssetMapGlobal) + " = " + serialize_payload(assets) + ";</script>";
  }

  std::string process_html(const std::string& html, const std::string& doc_path) {
    const auto scan = scan_html(html, doc_path);
    for (const auto& w : scan.parse_warnings) {
      warn("parse", w.message, location_of(html, doc_path, w.offset));
    }

    std::vector<Edit> edits;
    for (const auto& ref : scan.refs) {
      if (is_remote(ref.url_class)) {
        record_external(ref, location_of(html, doc_path, ref.span.begin));
        continue;
      }
      if (has_opaque_scheme(ref.url)) continue;
      switch (ref.kind) {
        case AssetKind::kScript:
          handle_script(ref, html, doc_path, edits);
          break;
        case AssetKind::kStylesheet:
          handle_stylesheet(ref, html, doc_path, edits);
          break;
        case AssetKind::kCssImport:
        case AssetKind::kCssUrl:
          handle_css_ref(ref, html, doc_path, {}, edits);
          break;
        default:
          handle_binary(ref, html, doc_path, edits);
          break;
      }
    }

    insert_bootstrap_block(html, edits);
    return apply_edits(html, std::move(edits));
  }

  void insert_bootstrap_block(std::string_view html, std::vector<Edit>& edits) {
    const auto lexed = html::lex(html);
    auto has_script_id = [&](std::string_view id) {
      return std::any_of(lexed.tags.begin(), lexed.tags.end(), [&](const html::StartTag& t) {
        const auto* attr = t.name == "script" ? t.find("id") : nullptr;
        return attr != nullptr && attr->value == id;
      });
    };

    std::string block;
    if (!config_.asset_map.empty() && !has_script_id(kAssetMapScriptId)) {
      block += asset_map_script();
    }
    if (config_.inject_fetch_shim && !has_script_id(kFetchShimScriptId)) {
      block += kFetchShim;
    }

    const std::size_t marker = html.find(kBootstrapMarker);
    if (marker != std::string_view::npos) {
      if (!block.empty()) {
        const std::size_t at = marker + kBootstrapMarker.size();
        edits.push_back({{at, at}, std::move(block)});
      }
      return;
    }

    block.insert(0, kBootstrapMarker);
    for (const auto& tag : lexed.tags) {
      if (tag.name == "head") {
        edits.push_back({{tag.span.end, tag.span.end}, std::move(block)});
        return;
      }
    }
    block = "<head>" + block + "</head>";
    for (const auto& tag : lexed.tags) {
      if (tag.name == "html") {
        edits.push_back({{tag.span.end, tag.span.end}, std::move(block)});
        return;
      }
    }
    // No <html>: keep a leading doctype first so the document stays in
    // standards mode.
    std::size_t at = 0;
    std::size_t probe = html.starts_with("\xEF\xBB\xBF") ? 3 : 0;
    while (probe < html.size() && std::isspace(static_cast<unsigned char>(html[probe]))) ++probe;
    if (html::ifind(html.substr(probe, 9), "<!doctype") == 0) {
      const std::size_t gt = html.find('>', probe);
      if (gt != std::string_view::npos) at = gt + 1;
    }
    edits.push_back({{at, at}, std::move(block)});
  }

  const BundleConfig& config_;
  const FileProvider& files_;
  fs::path root_;
  BundleReport report_;
};

ViolationRule rule_for(const AssetRef& ref) {
  switch (ref.kind) {
    case AssetKind::kScript:
      return ViolationRule::kExternalScript;
    case AssetKind::kStylesheet:
    case AssetKind::kCssImport:
      return ViolationRule::kExternalStylesheet;
    case AssetKind::kImage:
    case AssetKind::kIcon:
      return ViolationRule::kExternalImage;
    case AssetKind::kFont:
      return ViolationRule::kExternalFont;
    case AssetKind::kCssUrl: {
      std::string_view path = ref.url;
      path = path.substr(0, path.find_first_of("?#"));
      const auto mime = infer_mime(path);
      if (!mime.known) return ViolationRule::kExternalOther;
      if (mime.mime.starts_with("font/")) return ViolationRule::kExternalFont;
      if (mime.mime.starts_with("image/")) return ViolationRule::kExternalImage;
      return ViolationRule::kExternalOther;
    }
    default:
      return ViolationRule::kExternalOther;
  }
}

}  // namespace

BundleResult bundle(const BundleConfig& config, const FileProvider& files) {
  return Bundler(config, files).run();
}

MimeType infer_mime(std::string_view path) {
  static constexpr std::pair<std::string_view, std::string_view> kTable[] = {
      {"html", "text/html"},        {"js", "text/javascript"},   {"mjs", "text/javascript"},
      {"css", "text/css"},          {"png", "image/png"},        {"jpg", "image/jpeg"},
      {"jpeg", "image/jpeg"},       {"gif", "image/gif"},        {"svg", "image/svg+xml"},
      {"webp", "image/webp"},       {"ico", "image/x-icon"},     {"woff", "font/woff"},
      {"woff2", "font/woff2"},      {"ttf", "font/ttf"},         {"otf", "font/otf"},
      {"wasm", "application/wasm"}, {"json", "application/json"}, {"txt", "text/plain"},
      {"bin", "application/octet-stream"},
  };
  const auto slash = path.find_last_of("/\\");
  const std::string_view name = slash == std::string_view::npos ? path : path.substr(slash + 1);
  const auto dot = name.rfind('.');
  if (dot != std::string_view::npos) {
    std::string ext(name.substr(dot + 1));
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const auto& [key, mime] : kTable) {
      if (key == ext) return {std::string(mime), true};
    }
  }
  return {"application/octet-stream", false};
}

std::string base64_encode(std::string_view bytes) {
  // EVP_EncodeBlock takes int lengths and writes a trailing NUL; feed it
  // whole 3-byte groups and encode straight into the sized output.
  constexpr std::size_t kChunk = 3 * 1024 * 1024;
  std::string out(4 * ((bytes.size() + 2) / 3) + 1, '\0');
  std::size_t written = 0;
  for (std::size_t pos = 0; pos < bytes.size(); pos += kChunk) {
    const std::size_t len = std::min(kChunk, bytes.size() - pos);
    written += static_cast<std::size_t>(
        EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data() + written),
                        reinterpret_cast<const unsigned char*>(bytes.data() + pos),
                        static_cast<int>(len)));
  }
  out.resize(written);
  return out;
}

std::string to_data_uri(std::string_view bytes, std::string_view mime) {
  return "data:" + std::string(mime) + ";base64," + base64_encode(bytes);
}

std::vector<Violation> check(std::string_view html, std::span<const std::string> allow_external) {
  std::vector<Violation> out;
  for (const auto& ref : scan_html(html, "").refs) {
    if (ref.url_class == UrlClass::kDataUri || ref.url_class == UrlClass::kFragmentOnly) continue;
    if (ref.url_class == UrlClass::kRelative && has_opaque_scheme(ref.url)) continue;
    if (allowlisted(ref.url, allow_external)) continue;
    out.push_back({ref.url, ref.span.begin, rule_for(ref)});
  }
  return out;
}

std::string_view fetch_shim_script() { return kFetchShim; }

}  // namespace nova
