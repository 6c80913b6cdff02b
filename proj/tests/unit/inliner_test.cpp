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

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "nova/error.hpp"
#include "nova/html_lexer.hpp"
#include "nova/scanner.hpp"
#include "support.hpp"

namespace nova {
namespace {

std::size_t count(std::string_view hay, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string_view::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

bool has_warning(const BundleReport& r, std::string_view code) {
  return std::any_of(r.warnings.begin(), r.warnings.end(),
                     [&](const Warning& w) { return w.code == code; });
}

BundleResult bundle_memory(MemoryFileProvider& files, std::string html,
                           BundleConfig config = testing::memory_config()) {
  files.add("app/" + config.entry, std::move(html));
  return bundle(config, files);
}

TEST(Base64, KnownVectors) {
  EXPECT_EQ(base64_encode(""), "");
  EXPECT_EQ(base64_encode("f"), "Zg==");
  EXPECT_EQ(base64_encode("fo"), "Zm8=");
  EXPECT_EQ(base64_encode("foo"), "Zm9v");
  EXPECT_EQ(base64_encode("foobar"), "Zm9vYmFy");
  EXPECT_EQ(base64_encode(std::string("\x00\xFF", 2)), "AP8=");
}

TEST(Base64, RoundTripsThroughIndependentDecoder) {
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    std::string bytes(rng() % 200, '\0');
    for (auto& b : bytes) b = static_cast<char>(rng());
    const std::string encoded = base64_encode(bytes);
    EXPECT_EQ(encoded.find('\n'), std::string::npos);
    EXPECT_EQ(testing::base64_decode(encoded), bytes);
  }
}

TEST(ToDataUri, Examples) {
  EXPECT_EQ(to_data_uri("abc", "text/plain"), "data:text/plain;base64,YWJj");
  EXPECT_EQ(to_data_uri("", "image/png"), "data:image/png;base64,");
  EXPECT_EQ(to_data_uri(std::string("\x00\xFF", 2), "application/octet-stream"),
            "data:application/octet-stream;base64,AP8=");
}

TEST(InferMime, Table) {
  const std::vector<std::pair<std::string, std::string>> table = {
      {"a.html", "text/html"},       {"a.js", "text/javascript"}, {"a.mjs", "text/javascript"},
      {"a.css", "text/css"},         {"a.png", "image/png"},      {"a.jpg", "image/jpeg"},
      {"a.jpeg", "image/jpeg"},      {"a.gif", "image/gif"},      {"logo.svg", "image/svg+xml"},
      {"a.webp", "image/webp"},      {"a.ico", "image/x-icon"},   {"a.woff", "font/woff"},
      {"a.woff2", "font/woff2"},     {"a.ttf", "font/ttf"},       {"a.otf", "font/otf"},
      {"model.wasm", "application/wasm"}, {"a.json", "application/json"},
      {"a.txt", "text/plain"},       {"a.bin", "application/octet-stream"},
      {"dir.v2/A.PNG", "image/png"},
  };
  for (const auto& [path, mime] : table) {
    const auto m = infer_mime(path);
    EXPECT_EQ(m.mime, mime) << path;
    EXPECT_TRUE(m.known) << path;
  }
  const auto unknown = infer_mime("data.unknownext");
  EXPECT_EQ(unknown.mime, "application/octet-stream");
  EXPECT_FALSE(unknown.known);
  EXPECT_FALSE(infer_mime("Makefile").known);
}

TEST(Bundle, InlinesScriptText) {
  MemoryFileProvider files;
  files.add("app/app.js", "console.log(1)");
  const auto r = bundle_memory(files, R"(<html><head></head><body><script src="app.js"></script></body></html>)");
  EXPECT_NE(r.html.find("<script>console.log(1)</script>"), std::string::npos) << r.html;
  EXPECT_EQ(r.html.find("src=\"app.js\""), std::string::npos);
  ASSERT_EQ(r.report.inlined.size(), 1u);
  EXPECT_EQ(r.report.inlined[0].path, "app.js");
  EXPECT_EQ(r.report.inlined[0].kind, AssetKind::kScript);
}

TEST(Bundle, ScriptContainingClosingTagBecomesDataUri) {
  MemoryFileProvider files;
  const std::string js = "document.write('</SCRIPT>');";
  files.add("app/app.js", js);
  const auto r = bundle_memory(files, R"(<head></head><script src="app.js" integrity="sha384-x" crossorigin="anonymous" type="module"></script>)");
  EXPECT_NE(r.html.find("<script type=\"module\" src=\"data:text/javascript;base64," + base64_encode(js) + "\"></script>"),
            std::string::npos) << r.html;
  EXPECT_EQ(r.html.find("integrity"), std::string::npos);
  EXPECT_EQ(r.html.find("crossorigin"), std::string::npos);
  EXPECT_TRUE(has_warning(r.report, "script-data-uri"));
}

TEST(Bundle, ModuleTypePreservedOnInlineScript) {
  MemoryFileProvider files;
  files.add("app/m.js", "export {};");
  const auto r = bundle_memory(files, R"(<head></head><script type="module" src="m.js"></script>)");
  EXPECT_NE(r.html.find(R"(<script type="module">export {};</script>)"), std::string::npos) << r.html;
}

TEST(Bundle, EsModuleImportHeuristicWarns) {
  MemoryFileProvider files;
  files.add("app/m.js", "import { a } from './a.js';\n");
  const auto r = bundle_memory(files, R"(<head></head><script type="module" src="m.js"></script>)");
  EXPECT_TRUE(has_warning(r.report, "es-module-import"));
}

TEST(Bundle, StylesheetWithNestedImportsAndUrls) {
  MemoryFileProvider files;
  files.add("app/css/main.css", "@import \"theme.css\";\nbody{background:url(../img/bg.png)}");
  files.add("app/css/theme.css", "h1{color:red}");
  files.add("app/img/bg.png", "PNG");
  const auto r = bundle_memory(files, R"(<head><link rel="stylesheet" href="css/main.css" media="screen"></head>)");
  const std::string theme_uri = to_data_uri("h1{color:red}", "text/css");
  EXPECT_NE(r.html.find("<style media=\"screen\">@import \"" + theme_uri + "\";\nbody{background:url(" +
                        to_data_uri("PNG", "image/png") + ")}</style>"),
            std::string::npos) << r.html;
  EXPECT_TRUE(check(r.html, {}).empty());
}

TEST(Bundle, CssImportCycleIsBrokenWithWarning) {
  MemoryFileProvider files;
  files.add("app/a.css", "@import 'b.css';a{}");
  files.add("app/b.css", "@import 'a.css';b{}");
  const auto r = bundle_memory(files, R"(<head><link rel=stylesheet href=a.css></head>)");
  EXPECT_TRUE(has_warning(r.report, "css-import-cycle"));
  const std::string b_processed = std::string(kCycleComment) + "b{}";
  EXPECT_NE(r.html.find(to_data_uri(b_processed, "text/css")), std::string::npos) << r.html;
}

TEST(Bundle, BinaryRefsBecomeDataUris) {
  MemoryFileProvider files;
  files.add("app/a.png", "A");
  files.add("app/b.webp", "B");
  files.add("app/p.jpg", "P");
  files.add("app/f.ico", "F");
  const auto r = bundle_memory(files,
      R"(<head><link rel="icon" href="f.ico"></head><img src="a.png?v=2" srcset="a.png 1x, b.webp 2x"><video poster="p.jpg"></video>)");
  EXPECT_NE(r.html.find(R"(<link rel="icon" href="data:image/x-icon;base64,Rg==">)"), std::string::npos) << r.html;
  EXPECT_NE(r.html.find(R"(srcset="data:image/png;base64,QQ== 1x, data:image/webp;base64,Qg== 2x")"), std::string::npos);
  EXPECT_NE(r.html.find(R"(poster="data:image/jpeg;base64,UA==")"), std::string::npos);
  EXPECT_EQ(r.report.inlined.size(), 5u);
  EXPECT_TRUE(check(r.html, {}).empty());
}

TEST(Bundle, RemoteRefsAreKeptAndClassified) {
  MemoryFileProvider files;
  auto config = testing::memory_config();
  config.allow_external = {"https://cdn.example/"};
  const auto r = bundle_memory(files,
      R"(<head><script src="https://cdn.example/x.js"></script><link rel=stylesheet href="//other.example/s.css"></head>)",
      config);
  ASSERT_EQ(r.report.kept_external.size(), 2u);
  EXPECT_EQ(r.report.kept_external[0].reason, ExternalReason::kAllowlisted);
  EXPECT_EQ(r.report.kept_external[1].reason, ExternalReason::kRemoteNotAllowlisted);
  EXPECT_TRUE(has_warning(r.report, "remote-not-allowlisted"));
  EXPECT_NE(r.html.find(R"(<script src="https://cdn.example/x.js"></script>)"), std::string::npos);
}

TEST(Bundle, MissingAssetNamesPathAndLocation) {
  MemoryFileProvider files;
  try {
    bundle_memory(files, "<head></head>\n  <img src=\"gone.png\">");
    FAIL() << "expected BundleError";
  } catch (const BundleError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("app/gone.png"), std::string::npos) << msg;
    EXPECT_NE(msg.find("index.html:2:"), std::string::npos) << msg;
  }
}

TEST(Bundle, AssetOutsideRootIsAnError) {
  MemoryFileProvider files;
  files.add("secret.png", "S");
  EXPECT_THROW(bundle_memory(files, R"(<img src="../secret.png">)"), BundleError);
  MemoryFileProvider files2;
  EXPECT_THROW(bundle_memory(files2, R"(<img src="/a/../../x.png">)"), BundleError);
}

TEST(Bundle, MissingEntryIsAnError) {
  MemoryFileProvider files;
  EXPECT_THROW(bundle(testing::memory_config(), files), BundleError);
}

TEST(Bundle, MarkerPlacement) {
  struct Case {
    std::string in;
    std::string expected;
  };
  const std::string m(kBootstrapMarker);
  const std::vector<Case> cases = {
      {"<html><head><title>t</title></head></html>", "<html><head>" + m + "<title>t</title></head></html>"},
      {"<html lang=en><body>x</body></html>", "<html lang=en><head>" + m + "</head><body>x</body></html>"},
      {"<div>x</div>", "<head>" + m + "</head><div>x</div>"},
      {"<!DOCTYPE html>\n<p>x", "<!DOCTYPE html><head>" + m + "</head>\n<p>x"},
      {"<head>" + m + "</head>", "<head>" + m + "</head>"},
  };
  for (const auto& c : cases) {
    MemoryFileProvider files;
    EXPECT_EQ(bundle_memory(files, c.in).html, c.expected) << c.in;
  }
}

TEST(Bundle, AssetMapAndShimFollowMarker) {
  MemoryFileProvider files;
  files.add("app/model.wasm", std::string("\0asm", 4));
  auto config = testing::memory_config();
  config.asset_map = {"model.wasm"};
  config.inject_fetch_shim = true;
  const auto r = bundle_memory(files, "<html><head><title>x</title></head></html>", config);
  const std::string expected_prefix =
      "<html><head>" + std::string(kBootstrapMarker) +
      "<script id=\"nova-asset-map\">window.__NOVA_ASSETS__ = {\"model.wasm\":\"data:application/wasm;base64,AGFzbQ==\"};</script>" +
      std::string(fetch_shim_script()) + "<title>";
  EXPECT_EQ(r.html.substr(0, expected_prefix.size()), expected_prefix) << r.html;
  EXPECT_EQ(r.report.inlined.back().kind, AssetKind::kAssetMapEntry);
  EXPECT_EQ(count(r.html, "nova-asset-map"), 1u);
}

TEST(Bundle, OversizeWarnsButSucceeds) {
  MemoryFileProvider files;
  files.add("app/big.bin", std::string(2 * 1024 * 1024, 'x'));
  auto config = testing::memory_config();
  config.max_size_mb = 1;
  const auto r = bundle_memory(files, R"(<head></head><img src="big.bin">)", config);
  EXPECT_TRUE(has_warning(r.report, "bundle-too-large"));
  EXPECT_EQ(r.report.total_output_bytes, r.html.size());
}

TEST(Bundle, FixtureProducesSingleFile) {
  const auto r = bundle(testing::fixture_config(), testing::fixture_files());
  EXPECT_TRUE(check(r.html, {}).empty());
  EXPECT_TRUE(r.report.warnings.empty());
  std::vector<std::string> paths;
  for (const auto& a : r.report.inlined) paths.push_back(a.path);
  EXPECT_EQ(paths, (std::vector<std::string>{"favicon.ico", "style.css", "logo.png", "app.js", "model.wasm"}));
  EXPECT_EQ(count(r.html, std::string(kBootstrapMarker)), 1u);
  EXPECT_NE(r.html.find("id=\"node-count\""), std::string::npos);
  EXPECT_EQ(r.report.total_output_bytes, r.html.size());
}

TEST(Check, RawFixtureHasFourViolations) {
  const std::string raw = testing::read_file(testing::fixture_dir() / "dist" / "index.html");
  const auto v = check(raw, {});
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[0].rule, ViolationRule::kExternalImage);
  EXPECT_EQ(v[1].rule, ViolationRule::kExternalStylesheet);
  EXPECT_EQ(v[2].rule, ViolationRule::kExternalImage);
  EXPECT_EQ(v[3].rule, ViolationRule::kExternalScript);
  EXPECT_EQ(v[3].url, "app.js");
  EXPECT_EQ(raw.substr(v[3].location, 6), "app.js");
}

TEST(Check, AllowlistAndDataUris) {
  const std::string html = R"(<script src="https://cdn.example/x.js"></script><img src="data:image/png;base64,AA==">)";
  const std::vector<std::string> allow = {"https://cdn.example/"};
  EXPECT_TRUE(check(html, allow).empty());
  const auto v = check(html, {});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, ViolationRule::kExternalScript);
}

TEST(Check, InlineStyleUrlsAndFonts) {
  const auto v = check("<style>@font-face{src:url(f.woff2)}a{b:url(//x/y.gif)}</style>", {});
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].rule, ViolationRule::kExternalFont);
  EXPECT_EQ(v[1].rule, ViolationRule::kExternalImage);
}

// ---- properties ------------------------------------------------------------

struct Project {
  MemoryFileProvider files;
  std::string entry_html;
  std::uint64_t input_bytes = 0;
};

// Random projects whose references are all relative and present on disk.
Project random_project(std::mt19937& rng, std::size_t max_asset_bytes) {
  Project p;
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto blob = [&](std::size_t n) {
    std::string s(n, '\0');
    for (auto& c : s) c = static_cast<char>(rng());
    return s;
  };
  auto add = [&](const std::string& path, std::string bytes) {
    p.input_bytes += bytes.size();
    p.files.add("app/" + path, std::move(bytes));
  };

  std::string head, body;
  const std::size_t n_assets = 1 + pick(6);
  for (std::size_t i = 0; i < n_assets; ++i) {
    const std::string id = std::to_string(i);
    switch (pick(5)) {
      case 0:
        add("js/s" + id + ".js", "var v" + id + " = " + std::to_string(rng()) + ";\n");
        body += "<script src=\"js/s" + id + ".js\"></script>\n";
        break;
      case 1:
        add("img/i" + id + ".png", blob(1 + pick(max_asset_bytes)));
        add("css/c" + id + ".css", ".c" + id + "{background:url('../img/i" + id + ".png')}");
        head += "<link rel=\"stylesheet\" href=\"css/c" + id + ".css\">\n";
        break;
      case 2:
        add("img/p" + id + ".webp", blob(1 + pick(max_asset_bytes)));
        body += "<img alt=\"x\" src=\"img/p" + id + ".webp\">\n";
        break;
      case 3:
        add("f" + id + ".woff2", blob(1 + pick(max_asset_bytes)));
        head += "<style>@font-face{font-family:f" + id + ";src:url(f" + id + ".woff2)}</style>\n";
        break;
      default:
        add("m" + id + ".bin", blob(1 + pick(max_asset_bytes)));
        body += "<video><source src=\"m" + id + ".bin\"></video>\n";
    }
  }
  p.entry_html = "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n" + head +
                 "</head>\n<body>\n<p>text &amp; more</p>\n" + body + "</body>\n</html>\n";
  p.input_bytes += p.entry_html.size();
  p.files.add("app/index.html", p.entry_html);
  return p;
}

TEST(BundleProperty, CompleteIdempotentDeterministicAndBounded) {
  std::mt19937 rng(77);
  for (int i = 0; i < 60; ++i) {
    Project p = random_project(rng, 4096);
    const auto config = testing::memory_config();
    const auto first = bundle(config, p.files);
    EXPECT_TRUE(check(first.html, {}).empty()) << p.entry_html;

    const auto again = bundle(config, p.files);
    EXPECT_EQ(again.html, first.html);
    EXPECT_EQ(again.report, first.report);

    MemoryFileProvider rebundle = p.files;
    rebundle.add("app/index.html", first.html);
    EXPECT_EQ(bundle(config, rebundle).html, first.html);

    EXPECT_LE(static_cast<double>(first.html.size()),
              static_cast<double>(p.input_bytes) * 1.37 + 4096.0);
  }
}

TEST(BundleProperty, EntryBytesOutsideRewrittenSpansArePreserved) {
  std::mt19937 rng(31);
  for (int i = 0; i < 60; ++i) {
    Project p = random_project(rng, 256);
    const auto result = bundle(testing::memory_config(), p.files);
    // Every maximal run of entry bytes between ref constructs must appear in
    // the output in order.
    const auto scan = scan_html(p.entry_html, "index.html");
    std::vector<ByteSpan> cut;
    for (const auto& ref : scan.refs) cut.push_back(ref.construct.value_or(ref.span));
    const auto head_end = html::head_open_end(p.entry_html);
    ASSERT_TRUE(head_end.has_value());
    cut.push_back({*head_end, *head_end});
    std::sort(cut.begin(), cut.end(), [](auto a, auto b) { return a.begin < b.begin; });

    std::size_t pos = 0, out_pos = 0;
    for (const auto& c : cut) {
      if (c.begin < pos) continue;  // a url() inside an already-cut <style> element
      const std::string piece = p.entry_html.substr(pos, c.begin - pos);
      const auto found = result.html.find(piece, out_pos);
      ASSERT_NE(found, std::string::npos) << piece;
      out_pos = found + piece.size();
      pos = c.end;
    }
    EXPECT_NE(result.html.find(p.entry_html.substr(pos), out_pos), std::string::npos);
  }
}

}  // namespace
}  // namespace nova
