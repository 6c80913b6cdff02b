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

#ifndef NOVA_PROTOCOL_HPP_
#define NOVA_PROTOCOL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace nova {

inline constexpr std::string_view kPayloadGlobal = "__NOVA_PAYLOAD__";
inline constexpr std::string_view kEventGlobal = "__NOVA_EVENT__";
inline constexpr std::string_view kBootstrapIdPrefix = "nova-bootstrap-";
inline constexpr std::string_view kWidgetIdPrefix = "nova-widget-";

// Host-to-widget delivery unit. `data` keeps object keys in caller order.
struct PayloadEnvelope {
  nlohmann::ordered_json data;
  std::string event_name = "novaData";
  std::string widget_id;
};

struct IframeOptions {
  int width = 800;
  int height = 600;
  // Overrides the envelope's widget id for both the iframe and the bootstrap.
  std::optional<std::string> widget_id;
};

// Bootstrap <script> that publishes the payload as a global and dispatches it
// as a CustomEvent at window "load". Throws ProtocolError (naming the JSON
// pointer of the offending member) for non-finite numbers or invalid UTF-8.
std::string encode_payload(const PayloadEnvelope& envelope);

// Compact JSON with '<', '>' and '&' written as \u escapes.
std::string serialize_payload(const nlohmann::ordered_json& data);

std::string escape_srcdoc(std::string_view html);
std::string unescape_srcdoc(std::string_view text);

// Replaces the bootstrap marker with `bootstrap`, falling back to right after
// the first <head> start tag, then to the start of the document.
std::string inject_bootstrap(std::string_view html, std::string_view bootstrap);

std::string render_iframe(std::string_view html, const PayloadEnvelope& envelope,
                          const IframeOptions& options);

bool is_valid_widget_id(std::string_view id);

class EntropySource {
 public:
  virtual ~EntropySource() = default;
  virtual std::uint32_t next() = 0;
};

// Backed by std::random_device.
class SystemEntropy final : public EntropySource {
 public:
  std::uint32_t next() override;
};

// Returns `explicit_id` unchanged when given (throws ProtocolError if it is
// not 8 lowercase hex digits); otherwise draws a fresh id. Ids handed out by
// this process are never repeated, across threads.
std::string new_widget_id(const std::optional<std::string>& explicit_id, EntropySource& entropy);
std::string new_widget_id(const std::optional<std::string>& explicit_id = std::nullopt);

}  // namespace nova

#endif  // NOVA_PROTOCOL_HPP_
