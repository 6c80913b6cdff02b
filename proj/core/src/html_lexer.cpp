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

#include "nova/html_lexer.hpp"

#include <algorithm>
#include <array>

namespace nova::html {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }
bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string lowered(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), lower);
  return out;
}

// Elements whose content is not markup.
constexpr std::array<std::string_view, 8> kRawTextElements = {
    "script", "style", "textarea", "title", "xmp", "iframe", "noembed", "noframes"};

bool is_raw_text(std::string_view name) {
  return std::find(kRawTextElements.begin(), kRawTextElements.end(), name) !=
         kRawTextElements.end();
}

bool starts_with_at(std::string_view s, std::size_t pos, std::string_view prefix) {
  return s.size() >= pos + prefix.size() && s.substr(pos, prefix.size()) == prefix;
}

// Locates "</name" followed by a tag-name terminator, case-insensitively.
std::size_t find_end_tag(std::string_view html, std::string_view name, std::size_t from) {
  const std::string needle = "</" + std::string(name);
  std::size_t pos = from;
  while ((pos = ifind(html, needle, pos)) != std::string_view::npos) {
    std::size_t after = pos + needle.size();
    if (after >= html.size() || is_space(html[after]) || html[after] == '/' ||
        html[after] == '>') {
      return pos;
    }
    pos = after;
  }
  return std::string_view::npos;
}

}  // namespace

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (lower(a[i]) != lower(b[i])) return false;
  }
  return true;
}

std::size_t ifind(std::string_view haystack, std::string_view needle, std::size_t from) {
  if (needle.empty()) return from <= haystack.size() ? from : std::string_view::npos;
  if (haystack.size() < needle.size()) return std::string_view::npos;
  const char first = lower(needle.front());
  for (std::size_t i = from; i + needle.size() <= haystack.size(); ++i) {
    if (lower(haystack[i]) != first) continue;
    if (iequals(haystack.substr(i, needle.size()), needle)) return i;
  }
  return std::string_view::npos;
}

const Attribute* StartTag::find(std::string_view attr_name) const {
  for (const auto& a : attributes) {
    if (a.name == attr_name) return &a;
  }
  return nullptr;
}

ByteSpan StartTag::element_span() const {
  if (end_tag) return {span.begin, end_tag->end};
  if (content) return {span.begin, content->end};
  return span;
}

std::optional<StartTag> parse_start_tag(std::string_view html, std::size_t offset) {
  const std::size_t n = html.size();
  if (offset + 1 >= n || html[offset] != '<' || !is_ascii_alpha(html[offset + 1])) {
    return std::nullopt;
  }
  StartTag tag;
  std::size_t j = offset + 1;
  const std::size_t name_begin = j;
  while (j < n && !is_space(html[j]) && html[j] != '/' && html[j] != '>') ++j;
  tag.name = lowered(html.substr(name_begin, j - name_begin));

  while (true) {
    while (j < n && is_space(html[j])) ++j;
    if (j >= n) return std::nullopt;
    if (html[j] == '>') {
      ++j;
      break;
    }
    if (html[j] == '/') {
      if (j + 1 < n && html[j + 1] == '>') {
        tag.self_closing = true;
        j += 2;
        break;
      }
      ++j;
      continue;
    }

    Attribute attr;
    const std::size_t attr_begin = j;
    ++j;  // the first character is always part of the name, even '='
    while (j < n && !is_space(html[j]) && html[j] != '/' && html[j] != '>' && html[j] != '=') ++j;
    attr.name = lowered(html.substr(attr_begin, j - attr_begin));
    std::size_t attr_end = j;

    std::size_t k = j;
    while (k < n && is_space(html[k])) ++k;
    if (k < n && html[k] == '=') {
      ++k;
      while (k < n && is_space(html[k])) ++k;
      if (k >= n) return std::nullopt;
      attr.has_value = true;
      if (html[k] == '"' || html[k] == '\'') {
        const char quote = html[k];
        const std::size_t vb = k + 1;
        const std::size_t ve = html.find(quote, vb);
        if (ve == std::string_view::npos) return std::nullopt;
        attr.value_span = {vb, ve};
        attr_end = ve + 1;
      } else {
        const std::size_t vb = k;
        while (k < n && !is_space(html[k]) && html[k] != '>') ++k;
        attr.value_span = {vb, k};
        attr_end = k;
      }
      j = attr_end;
    }
    attr.span = {attr_begin, attr_end};
    attr.value = html.substr(attr.value_span.begin, attr.value_span.size());
    tag.attributes.push_back(std::move(attr));
  }
  tag.span = {offset, j};
  return tag;
}

LexResult lex(std::string_view html) {
  LexResult out;
  const std::size_t n = html.size();
  std::size_t pos = 0;
  while (pos < n) {
    const std::size_t lt = html.find('<', pos);
    if (lt == std::string_view::npos) break;

    if (starts_with_at(html, lt, "<!--")) {
      std::size_t body = lt + 4;
      std::size_t end;
      if (starts_with_at(html, body, ">")) {
        end = body + 1;
      } else if (starts_with_at(html, body, "->")) {
        end = body + 2;
      } else {
        std::size_t close = html.find("-->", body);
        std::size_t bang = html.find("--!>", body);
        if (close == std::string_view::npos && bang == std::string_view::npos) {
          out.diagnostics.push_back({lt, "unterminated comment"});
          out.comments.push_back({lt, n});
          break;
        }
        if (bang < close) {
          end = bang + 4;
        } else {
          end = close + 3;
        }
      }
      out.comments.push_back({lt, end});
      pos = end;
      continue;
    }

    if (starts_with_at(html, lt, "<!") || starts_with_at(html, lt, "<?")) {
      const std::size_t gt = html.find('>', lt + 2);
      if (gt == std::string_view::npos) {
        out.diagnostics.push_back({lt, "unterminated markup declaration"});
        break;
      }
      pos = gt + 1;
      continue;
    }

    if (starts_with_at(html, lt, "</")) {
      const std::size_t gt = html.find('>', lt + 2);
      if (gt == std::string_view::npos) {
        out.diagnostics.push_back({lt, "unterminated end tag"});
        break;
      }
      pos = gt + 1;
      continue;
    }

    if (lt + 1 < n && is_ascii_alpha(html[lt + 1])) {
      auto tag = parse_start_tag(html, lt);
      if (!tag) {
        out.diagnostics.push_back({lt, "unterminated start tag"});
        break;
      }
      pos = tag->span.end;
      if (is_raw_text(tag->name)) {
        const std::size_t close = find_end_tag(html, tag->name, pos);
        if (close == std::string_view::npos) {
          out.diagnostics.push_back({lt, "unterminated <" + tag->name + "> element"});
          tag->content = ByteSpan{pos, n};
          pos = n;
        } else {
          tag->content = ByteSpan{pos, close};
          const std::size_t gt = html.find('>', close);
          const std::size_t end = gt == std::string_view::npos ? n : gt + 1;
          tag->end_tag = ByteSpan{close, end};
          pos = end;
        }
      } else if (tag->name == "plaintext") {
        tag->content = ByteSpan{pos, n};
        pos = n;
      }
      out.tags.push_back(std::move(*tag));
      continue;
    }

    pos = lt + 1;
  }
  return out;
}

std::optional<std::size_t> head_open_end(std::string_view html) {
  for (const auto& tag : lex(html).tags) {
    if (tag.name == "head") return tag.span.end;
  }
  return std::nullopt;
}

}  // namespace nova::html
