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

#include "support.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <stdexcept>

namespace nova::testing {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

fs::path source_dir() { return fs::path(NOVA_SOURCE_DIR); }
fs::path fixture_dir() { return source_dir() / "fixtures" / "toygraph"; }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

BundleConfig fixture_config() {
  return parse_config(read_file(fixture_dir() / "nova.config.json")).config;
}

DiskFileProvider fixture_files() { return DiskFileProvider(fixture_dir()); }

BundleConfig memory_config(std::string entry) {
  BundleConfig config;
  config.name = "mem";
  config.entry = std::move(entry);
  config.root = "app";
  config.package.package_name = "mem";
  return config;
}

TempDir::TempDir() {
  static std::mt19937_64 rng{std::random_device{}()};
  for (int attempt = 0; attempt < 100; ++attempt) {
    fs::path candidate = fs::temp_directory_path() / ("nova-test-" + std::to_string(rng()));
    if (fs::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create temp dir");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::optional<std::string> base64_decode(std::string_view text) {
  static constexpr std::string_view kAlphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  if (text.size() % 4 != 0) return std::nullopt;
  std::string out;
  for (std::size_t i = 0; i < text.size(); i += 4) {
    std::uint32_t block = 0;
    int pad = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      const char c = text[i + k];
      block <<= 6;
      if (c == '=') {
        if (i + 4 != text.size() || k < 2) return std::nullopt;
        ++pad;
        continue;
      }
      if (pad > 0) return std::nullopt;
      const auto pos = kAlphabet.find(c);
      if (pos == std::string_view::npos) return std::nullopt;
      block |= static_cast<std::uint32_t>(pos);
    }
    out.push_back(static_cast<char>((block >> 16) & 0xFF));
    if (pad < 2) out.push_back(static_cast<char>((block >> 8) & 0xFF));
    if (pad < 1) out.push_back(static_cast<char>(block & 0xFF));
  }
  return out;
}

namespace {

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

std::string JsonFuzzer::string() {
  static const std::string_view kPieces[] = {
      "</script>", "</SCRIPT ", "<script>", "<!--", "-->", "\"", "\\", "'", "&", "&amp;",
      "&quot;", "<", ">", "/", "${", "`", "; window.__NOVA_EVENT__ = ", "<!--NOVA:BOOTSTRAP-->",
      "srcdoc=\"", " ", " ", "abc", " ", "data:", "null", "}", "]"};
  std::string out;
  const std::size_t parts = pick(8);
  for (std::size_t i = 0; i < parts; ++i) {
    switch (pick(5)) {
      case 0:
        out += kPieces[pick(std::size(kPieces))];
        break;
      case 1:
        append_utf8(out, static_cast<char32_t>(pick(0x20)));  // control characters
        break;
      case 2:
        append_utf8(out, static_cast<char32_t>(0x10000 + pick(0x100000)));  // astral plane
        break;
      case 3: {
        // BMP outside the surrogate range
        char32_t cp = static_cast<char32_t>(0x80 + pick(0xFF80 - 0x800));
        if (cp >= 0xD800) cp += 0x800;
        append_utf8(out, cp);
        break;
      }
      default:
        out.push_back(static_cast<char>(0x20 + pick(0x5F)));  // printable ASCII
    }
  }
  return out;
}

ordered_json JsonFuzzer::value(int depth) {
  const std::size_t kinds = depth >= 4 ? 6 : 8;
  switch (pick(kinds)) {
    case 0: return nullptr;
    case 1: return pick(2) == 0;
    case 2: return static_cast<std::int64_t>(rng_()) - static_cast<std::int64_t>(rng_());
    case 3: {
      std::uniform_real_distribution<double> dist(-1e6, 1e6);
      double d = dist(rng_);
      if (pick(4) == 0) d *= 1e300;
      if (pick(8) == 0) d = 1e-300 * dist(rng_);
      return d;
    }
    case 4:
    case 5: return string();
    case 6: {
      ordered_json arr = ordered_json::array();
      const std::size_t n = pick(5);
      for (std::size_t i = 0; i < n; ++i) arr.push_back(value(depth + 1));
      return arr;
    }
    default: {
      ordered_json obj = ordered_json::object();
      const std::size_t n = pick(5);
      for (std::size_t i = 0; i < n; ++i) {
        std::string key = string();
        if (obj.contains(key)) continue;
        obj[key] = value(depth + 1);
      }
      return obj;
    }
  }
}

std::optional<ExtractedBootstrap> extract_bootstrap(std::string_view fragment) {
  constexpr std::string_view kSrcdocOpen = " srcdoc=\"";
  const auto open = fragment.find(kSrcdocOpen);
  if (open == std::string_view::npos) return std::nullopt;
  const auto value_begin = open + kSrcdocOpen.size();
  // The escaped attribute value contains no raw '"'.
  const auto value_end = fragment.find('"', value_begin);
  if (value_end == std::string_view::npos) return std::nullopt;

  // Unescape (&quot; then &amp;, one left-to-right pass).
  std::string doc;
  std::string_view raw = fragment.substr(value_begin, value_end - value_begin);
  for (std::size_t i = 0; i < raw.size();) {
    if (raw.substr(i, 6) == "&quot;") {
      doc += '"';
      i += 6;
    } else if (raw.substr(i, 5) == "&amp;") {
      doc += '&';
      i += 5;
    } else {
      doc += raw[i++];
    }
  }

  constexpr std::string_view kScriptOpen = "<script id=\"nova-bootstrap-";
  const auto s = doc.find(kScriptOpen);
  if (s == std::string::npos) return std::nullopt;
  ExtractedBootstrap out;
  out.widget_id = doc.substr(s + kScriptOpen.size(), 8);
  const auto body_begin = doc.find('>', s) + 1;
  const auto close = doc.find("</script>", body_begin);
  if (close == std::string::npos) return std::nullopt;
  out.script_body = doc.substr(body_begin, close - body_begin);

  constexpr std::string_view kAssign = "window.__NOVA_PAYLOAD__ = ";
  constexpr std::string_view kEventAssign = "; window.__NOVA_EVENT__ = \"";
  if (!std::string_view(out.script_body).starts_with(kAssign)) return std::nullopt;
  const auto ev = out.script_body.rfind(kEventAssign);
  if (ev == std::string::npos) return std::nullopt;
  out.payload_json = out.script_body.substr(kAssign.size(), ev - kAssign.size());
  const auto ev_begin = ev + kEventAssign.size();
  out.event_name = out.script_body.substr(ev_begin, out.script_body.find('"', ev_begin) - ev_begin);
  return out;
}

std::map<std::string, std::string> hash_tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string bytes = read_file(entry.path());
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) {
      hex += kHex[digest[i] >> 4];
      hex += kHex[digest[i] & 0xF];
    }
    out[fs::relative(entry.path(), dir).generic_string()] = hex;
  }
  return out;
}

}  // namespace nova::testing
