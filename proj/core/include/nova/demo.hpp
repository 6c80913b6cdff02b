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

#ifndef NOVA_DEMO_HPP_
#define NOVA_DEMO_HPP_

#include <optional>
#include <string_view>

#include <nlohmann/json.hpp>

#include "nova/codegen.hpp"
#include "nova/config.hpp"

namespace nova {

inline constexpr std::string_view kDemoPagePath = "demo/index.html";
inline constexpr std::string_view kNoSamplePayloadNote = "no sample payload configured";

// Two-panel static page: the bundled app as a plain web app next to a
// simulated notebook cell showing the same widget. Both iframes carry the same
// srcdoc. The widget id is derived from the inputs so output is reproducible.
PackageTree generate_demo(const BundleConfig& config, std::string_view bundled_html,
                          const std::optional<nlohmann::ordered_json>& sample_payload);

}  // namespace nova

#endif  // NOVA_DEMO_HPP_
