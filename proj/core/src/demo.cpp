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

#include "nova/demo.hpp"

#include <openssl/evp.h>

#include <cstdio>

#include "nova/error.hpp"
#include "nova/inliner.hpp"
#include "nova/protocol.hpp"

namespace nova {
namespace {

constexpr std::string_view kPageTemplate = R"(<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<meta name="viewport" content="width=device-width, initial-scale=1">
<title>{{title}} demo</title>
<style>
body { margin: 0; font-family: system-ui, -apple-system, "Segoe UI", sans-serif; color: #1f2933; background: #f4f6f8; }
header { padding: 16px 24px; background: #ffffff; border-bottom: 1px solid #d9e2ec; }
header h1 { margin: 0; font-size: 20px; }
.nova-demo { display: flex; flex-wrap: wrap; gap: 24px; padding: 24px; align-items: flex-start; }
.nova-panel { flex: 1 1 0; min-width: 320px; background: #ffffff; border: 1px solid #d9e2ec; border-radius: 6px; padding: 16px; overflow: auto; }
.nova-panel h2 { margin: 0 0 12px; font-size: 16px; }
.nova-note { margin: 0 0 12px; padding: 8px 12px; background: #fff8e1; border: 1px solid #f0d58c; border-radius: 4px; }
.nova-cell { border: 1px solid #d9e2ec; border-radius: 4px; }
.nova-cell-input { margin: 0; padding: 12px; background: #f7f9fb; border-bottom: 1px solid #d9e2ec; font-family: ui-monospace, SFMono-Regular, Menlo, Consolas, monospace; font-size: 13px; white-space: pre; overflow-x: auto; }
.nova-cell-output { padding: 12px; }
</style>
</head>
<body>
<header><h1>{{title}}</h1>{{notebook_link}}</header>
<main class="nova-demo">
<section class="nova-panel" id="nova-web-app">
<h2>Web app</h2>
{{note}}{{app_iframe}}
</section>
<section class="nova-panel" id="nova-notebook-widget">
<h2>Notebook widget</h2>
<div class="nova-cell">
<pre class="nova-cell-input"><code>{{snippet}}</code></pre>
<div class="nova-cell-output">
{{widget_iframe}}
</div>
</div>
</section>
</main>
</body>
</html>
)";

std::string html_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string derived_widget_id(const BundleConfig& config, std::string_view html,
                              const std::string& payload_json) {
  std::string material;
  for (std::string_view part : {std::string_view(config.package.package_name), html,
                                std::string_view(payload_json)}) {
    material.append(part);
    material.push_back('\0');
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(material.data(), material.size(), digest, &len, EVP_sha256(), nullptr);
  char hex[9];
  std::snprintf(hex, sizeof hex, "%02x%02x%02x%02x", digest[0], digest[1], digest[2], digest[3]);
  return std::string(hex, 8);
}

}  // namespace

PackageTree generate_demo(const BundleConfig& config, std::string_view bundled_html,
                          const std::optional<nlohmann::ordered_json>& sample_payload) {
  if (bundled_html.find(kBootstrapMarker) == std::string_view::npos) {
    throw CodegenError("bundled HTML lacks the bootstrap marker " + std::string(kBootstrapMarker));
  }

  PayloadEnvelope envelope;
  envelope.data = sample_payload.value_or(nlohmann::ordered_json());
  envelope.event_name = config.event_name;
  envelope.widget_id = derived_widget_id(config, bundled_html, serialize_payload(envelope.data));

  IframeOptions options;
  options.width = config.package.default_width;
  options.height = config.package.default_height;

  const std::string widget_iframe = render_iframe(bundled_html, envelope, options);
  // Same srcdoc; only the outer element id differs so the page has unique ids.
  std::string app_iframe = widget_iframe;
  const std::string widget_prefix = "<iframe id=\"" + std::string(kWidgetIdPrefix);
  app_iframe.replace(0, widget_prefix.size(), "<iframe id=\"nova-app-");

  std::string note;
  if (!sample_payload) {
    note = "<p class=\"nova-note\">" + std::string(kNoSamplePayloadNote) +
           "; both views receive a null payload.</p>\n";
  }
  std::string notebook_link;
  if (config.notebook_url) {
    notebook_link = "<p><a href=\"" + html_escape(*config.notebook_url) +
                    "\">Open the example notebook</a></p>";
  }

  PackageTree tree;
  tree.add(kDemoPagePath,
           detail::render_template(kPageTemplate,
                                   {{"title", html_escape(config.name)},
                                    {"notebook_link", notebook_link},
                                    {"note", note},
                                    {"app_iframe", app_iframe},
                                    {"snippet", html_escape(usage_snippet(config.package))},
                                    {"widget_iframe", widget_iframe}}));
  return tree;
}

}  // namespace nova
