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

#include "nova/scanner.hpp"

#include <algorithm>

#include "nova/html_lexer.hpp"

namespace nova {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) {
  return is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == '\\' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  return s.size() >= pos + prefix.size() && html::iequals(s.substr(pos, prefix.size()), prefix);
}

ByteSpan trim_span(std::string_view doc, ByteSpan span) {
  while (span.begin < span.end && is_space(doc[span.begin])) ++span.begin;
  while (span.end > span.begin && is_space(doc[span.end - 1])) --span.end;
  return span;
}

bool schedulable(UrlClass c) { return c != UrlClass::kDataUri && c != UrlClass::kFragmentOnly; }

void add_ref(ScanResult& out, std::string_view doc, AssetKind kind, SourceKind source,
             std::string_view source_path, ByteSpan span,
             std::optional<ByteSpan> construct = std::nullopt) {
  span = trim_span(doc, span);
  if (span.size() == 0) return;
  AssetRef ref;
  ref.kind = kind;
  ref.url = std::string(doc.substr(span.begin, span.size()));
  ref.url_class = classify_url(ref.url);
  if (!schedulable(ref.url_class)) return;
  ref.source = source;
  ref.source_path = std::string(source_path);
  ref.span = span;
  ref.construct = construct;
  out.refs.push_back(std::move(ref));
}

bool has_rel_token(const html::Attribute& rel, std::string_view token) {
  std::string_view v = rel.value;
  std::size_t pos = 0;
  while (pos < v.size()) {
    while (pos < v.size() && is_space(v[pos])) ++pos;
    std::size_t end = pos;
    while (end < v.size() && !is_space(v[end])) ++end;
    if (end > pos && html::iequals(v.substr(pos, end - pos), token)) return true;
    pos = end;
  }
  return false;
}

void add_attr_ref(ScanResult& out, std::string_view html, const html::StartTag& tag,
                  std::string_view attr_name, AssetKind kind, std::string_view source_path,
                  std::optional<ByteSpan> construct = std::nullopt) {
  const auto* attr = tag.find(attr_name);
  if (attr == nullptr || !attr->has_value) return;
  add_ref(out, html, kind, SourceKind::kHtml, source_path, attr->value_span, construct);
}

void add_srcset_refs(ScanResult& out, std::string_view html, const html::StartTag& tag,
                     AssetKind kind, std::string_view source_path) {
  const auto* attr = tag.find("srcset");
  if (attr == nullptr || !attr->has_value) return;
  for (const auto& span : detail::split_srcset(attr->value)) {
    add_ref(out, html, kind, SourceKind::kHtml, source_path,
            {attr->value_span.begin + span.begin, attr->value_span.begin + span.end});
  }
}

// Skips a CSS string starting at the quote at `i`; returns the index just past
// the closing quote (or the end of the line/input for unterminated strings).
std::size_t skip_css_string(std::string_view css, std::size_t i) {
  const char quote = css[i];
  std::size_t j = i + 1;
  while (j < css.size()) {
    const char c = css[j];
    if (c == '\\') {
      j += 2;
      continue;
    }
    if (c == quote) return j + 1;
    if (c == '\n') return j;
    ++j;
  }
  return css.size();
}

struct UrlToken {
  ByteSpan url;  // contents, excluding quotes
  std::size_t end = 0;  // just past ')'
};

// Parses `url(` ... `)` beginning at `i` (pointing at 'u').
std::optional<UrlToken> parse_url_token(std::string_view css, std::size_t i) {
  std::size_t j = i + 4;
  while (j < css.size() && is_space(css[j])) ++j;
  if (j >= css.size()) return std::nullopt;
  UrlToken tok;
  if (css[j] == '"' || css[j] == '\'') {
    const std::size_t close = skip_css_string(css, j);
    if (close > css.size() || close == j + 1 || css[close - 1] != css[j]) return std::nullopt;
    tok.url = {j + 1, close - 1};
    j = close;
    while (j < css.size() && is_space(css[j])) ++j;
    if (j >= css.size() || css[j] != ')') return std::nullopt;
    tok.end = j + 1;
    return tok;
  }
  const std::size_t begin = j;
  while (j < css.size() && css[j] != ')' && css[j] != '"' && css[j] != '\'' && css[j] != '(') {
    if (css[j] == '\\') ++j;
    ++j;
  }
  if (j >= css.size() || css[j] != ')') return std::nullopt;
  tok.url = {begin, j};
  tok.end = j + 1;
  return tok;
}

// End of an at-rule prelude: just past the terminating ';', or the position
// of a '{' / '}' / end of input.
std::size_t at_rule_end(std::string_view css, std::size_t i) {
  while (i < css.size()) {
    const char c = css[i];
    if (c == ';') return i + 1;
    if (c == '{' || c == '}') return i;
    if (c == '"' || c == '\'') {
      i = skip_css_string(css, i);
      continue;
    }
    if (c == '/' && i + 1 < css.size() && css[i + 1] == '*') {
      const std::size_t close = css.find("*/", i + 2);
      if (close == std::string_view::npos) return css.size();
      i = close + 2;
      continue;
    }
    ++i;
  }
  return css.size();
}

}  // namespace

UrlClass classify_url(std::string_view url) {
  if (starts_with_ci(url, 0, "data:")) return UrlClass::kDataUri;
  if (!url.empty() && url.front() == '#') return UrlClass::kFragmentOnly;
  if (url.starts_with("//")) return UrlClass::kProtocolRelative;
  if (!url.empty() && is_alpha(url.front())) {
    std::size_t i = 1;
    while (i < url.size() &&
           (is_alpha(url[i]) || is_digit(url[i]) || url[i] == '+' || url[i] == '-' ||
            url[i] == '.')) {
      ++i;
    }
    if (url.substr(i).starts_with("://")) return UrlClass::kAbsoluteRemote;
  }
  return UrlClass::kRelative;
}

namespace detail {

std::vector<ByteSpan> split_srcset(std::string_view value) {
  std::vector<ByteSpan> out;
  const std::size_t n = value.size();
  std::size_t pos = 0;
  while (pos < n) {
    while (pos < n && (is_space(value[pos]) || value[pos] == ',')) ++pos;
    if (pos >= n) break;
    const std::size_t begin = pos;
    while (pos < n && !is_space(value[pos])) ++pos;
    std::size_t end = pos;
    bool trailing_comma = false;
    while (end > begin && value[end - 1] == ',') {
      --end;
      trailing_comma = true;
    }
    if (end > begin) out.push_back({begin, end});
    if (trailing_comma) continue;
    // Descriptors run to the next comma outside parentheses.
    int depth = 0;
    while (pos < n) {
      const char c = value[pos];
      if (c == '(') ++depth;
      if (c == ')' && depth > 0) --depth;
      if (c == ',' && depth == 0) break;
      ++pos;
    }
  }
  return out;
}

void scan_css_into(std::string_view css, std::size_t base, std::string_view source_path,
                   ScanResult& out) {
  // `css` is a window into the full document; spans are reported in document
  // coordinates, so build them from the window and shift by `base`.
  const std::size_t n = css.size();
  auto doc_span = [base](ByteSpan s) { return ByteSpan{s.begin + base, s.end + base}; };

  auto push = [&](AssetKind kind, ByteSpan local, std::optional<ByteSpan> construct) {
    ScanResult tmp;
    add_ref(tmp, css, kind, SourceKind::kCss, source_path, local, std::nullopt);
    for (auto& ref : tmp.refs) {
      ref.span = doc_span(ref.span);
      if (construct) ref.construct = doc_span(*construct);
      out.refs.push_back(std::move(ref));
    }
  };

  std::size_t i = 0;
  while (i < n) {
    const char c = css[i];
    if (c == '/' && i + 1 < n && css[i + 1] == '*') {
      const std::size_t close = css.find("*/", i + 2);
      if (close == std::string_view::npos) {
        out.parse_warnings.push_back({base + i, "unterminated CSS comment"});
        break;
      }
      i = close + 2;
      continue;
    }
    if (c == '"' || c == '\'') {
      i = skip_css_string(css, i);
      continue;
    }
    if (c == '@' && starts_with_ci(css, i + 1, "import") &&
        (i + 7 >= n || !is_ident_char(css[i + 7]))) {
      std::size_t j = i + 7;
      while (j < n) {
        if (is_space(css[j])) {
          ++j;
        } else if (css[j] == '/' && j + 1 < n && css[j + 1] == '*') {
          const std::size_t close = css.find("*/", j + 2);
          j = close == std::string_view::npos ? n : close + 2;
        } else {
          break;
        }
      }
      const std::size_t rule_end = at_rule_end(css, j);
      const ByteSpan rule{i, rule_end};
      if (j < n && (css[j] == '"' || css[j] == '\'')) {
        const std::size_t close = skip_css_string(css, j);
        if (close <= n && close > j + 1 && css[close - 1] == css[j]) {
          push(AssetKind::kCssImport, {j + 1, close - 1}, rule);
        } else {
          out.parse_warnings.push_back({base + i, "malformed @import string"});
        }
      } else if (starts_with_ci(css, j, "url(")) {
        if (auto tok = parse_url_token(css, j)) {
          push(AssetKind::kCssImport, tok->url, rule);
        } else {
          out.parse_warnings.push_back({base + i, "malformed @import url()"});
        }
      } else {
        out.parse_warnings.push_back({base + i, "@import without a URL"});
      }
      i = std::max(rule_end, i + 7);
      continue;
    }
    if ((c == 'u' || c == 'U') && starts_with_ci(css, i, "url(") &&
        (i == 0 || !is_ident_char(css[i - 1]))) {
      if (auto tok = parse_url_token(css, i)) {
        push(AssetKind::kCssUrl, tok->url, std::nullopt);
        i = tok->end;
      } else {
        out.parse_warnings.push_back({base + i, "malformed url() token"});
        i += 4;
      }
      continue;
    }
    ++i;
  }
}

}  // namespace detail

ScanResult scan_css(std::string_view css, std::string_view source_path) {
  ScanResult out;
  detail::scan_css_into(css, 0, source_path, out);
  return out;
}

ScanResult scan_html(std::string_view html, std::string_view source_path) {
  ScanResult out;
  const auto lexed = html::lex(html);
  for (const auto& d : lexed.diagnostics) out.parse_warnings.push_back({d.offset, d.message});

  for (const auto& tag : lexed.tags) {
    const std::string& name = tag.name;
    if (name == "script") {
      add_attr_ref(out, html, tag, "src", AssetKind::kScript, source_path, tag.element_span());
    } else if (name == "link") {
      const auto* rel = tag.find("rel");
      if (rel == nullptr) continue;
      if (has_rel_token(*rel, "stylesheet")) {
        add_attr_ref(out, html, tag, "href", AssetKind::kStylesheet, source_path, tag.span);
      } else if (has_rel_token(*rel, "icon")) {
        add_attr_ref(out, html, tag, "href", AssetKind::kIcon, source_path, tag.span);
      }
    } else if (name == "img") {
      add_attr_ref(out, html, tag, "src", AssetKind::kImage, source_path);
      add_srcset_refs(out, html, tag, AssetKind::kImage, source_path);
    } else if (name == "source") {
      add_attr_ref(out, html, tag, "src", AssetKind::kMedia, source_path);
      add_srcset_refs(out, html, tag, AssetKind::kMedia, source_path);
    } else if (name == "video") {
      add_attr_ref(out, html, tag, "poster", AssetKind::kImage, source_path);
    } else if (name == "style" && tag.content) {
      detail::scan_css_into(html.substr(tag.content->begin, tag.content->size()),
                            tag.content->begin, source_path, out);
    } else if (name == "use") {
      const auto* href = tag.find("href");
      if (href == nullptr) href = tag.find("xlink:href");
      if (href != nullptr) {
        const UrlClass c = classify_url(href->value);
        if (schedulable(c)) {
          out.parse_warnings.push_back(
              {href->value_span.begin,
               "external SVG <use> reference \"" + std::string(href->value) + "\" is not inlined"});
        }
      }
    } else if (name == "base" && tag.find("href") != nullptr) {
      out.parse_warnings.push_back(
          {tag.span.begin, "<base href> changes URL resolution; references are resolved against "
                           "the document location instead"});
    }
  }

  std::stable_sort(out.refs.begin(), out.refs.end(),
                   [](const AssetRef& a, const AssetRef& b) { return a.span.begin < b.span.begin; });
  std::stable_sort(out.parse_warnings.begin(), out.parse_warnings.end(),
                   [](const ParseWarning& a, const ParseWarning& b) { return a.offset < b.offset; });
  return out;
}

}  // namespace nova
