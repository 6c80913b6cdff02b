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

#ifndef NOVA_HTML_LEXER_HPP_
#define NOVA_HTML_LEXER_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nova/model.hpp"

namespace nova::html {

struct Attribute {
  std::string name;  // lowercased
  std::string_view value;  // raw, entities not decoded
  ByteSpan span;  // whole attribute text, name through closing quote
  ByteSpan value_span;  // value text only (inside quotes)
  bool has_value = false;
};

struct StartTag {
  std::string name;  // lowercased
  std::vector<Attribute> attributes;
  ByteSpan span;  // '<' through '>'
  bool self_closing = false;
  // For raw-text elements (script, style, textarea, ...): the content between
  // the start tag and the matching end tag, and the span of the end tag.
  std::optional<ByteSpan> content;
  std::optional<ByteSpan> end_tag;

  // First attribute with this (lowercase) name; later duplicates are ignored
  // as in browsers.
  const Attribute* find(std::string_view attr_name) const;
  ByteSpan element_span() const;
};

struct Diagnostic {
  std::size_t offset = 0;
  std::string message;
};

struct LexResult {
  std::vector<StartTag> tags;
  std::vector<ByteSpan> comments;
  std::vector<Diagnostic> diagnostics;
};

// Lenient single-pass tokenizer that records start tags with byte-exact
// attribute spans. Comments, doctypes, end tags and text are skipped; the
// content of raw-text elements is never tokenized. Never throws: malformed
// input yields diagnostics and best-effort tokens.
LexResult lex(std::string_view html);

// Parses a single start tag beginning at `offset` (which must point at '<').
std::optional<StartTag> parse_start_tag(std::string_view html, std::size_t offset);

// Byte offset just past the first <head ...> start tag, if any.
std::optional<std::size_t> head_open_end(std::string_view html);

bool iequals(std::string_view a, std::string_view b);
// Case-insensitive substring search; returns npos when absent.
std::size_t ifind(std::string_view haystack, std::string_view needle, std::size_t from = 0);

}  // namespace nova::html

#endif  // NOVA_HTML_LEXER_HPP_
