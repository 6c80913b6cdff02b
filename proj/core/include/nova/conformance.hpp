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

#ifndef NOVA_CONFORMANCE_HPP_
#define NOVA_CONFORMANCE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace nova {

// One recorded (inputs, exact output) pair for render_iframe. The Python
// runtime must reproduce `expected` byte for byte.
struct ConformanceVector {
  std::string id;
  std::string html;
  nlohmann::ordered_json payload;
  std::string event_name;
  int width = 0;
  int height = 0;
  std::string widget_id;
  std::string expected;
};

// Deterministic vector set. Vector "01" renders `fixture_html` with {"a":1};
// the rest cover marker fallbacks and adversarial payload strings.
std::vector<ConformanceVector> conformance_vectors(std::string_view fixture_html);

std::string conformance_vectors_json(const std::vector<ConformanceVector>& vectors);

}  // namespace nova

#endif  // NOVA_CONFORMANCE_HPP_
