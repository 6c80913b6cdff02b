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

#include "nova/conformance.hpp"

#include "nova/protocol.hpp"

namespace nova {
namespace {

using nlohmann::ordered_json;

constexpr std::string_view kMarkedDoc =
    "<!DOCTYPE html>\n<html>\n<head><!--NOVA:BOOTSTRAP--><title>v</title></head>\n"
    "<body><div id=\"app\"></div></body>\n</html>\n";

ordered_json parse(std::string_view text) { return ordered_json::parse(text); }

}  // namespace

std::vector<ConformanceVector> conformance_vectors(std::string_view fixture_html) {
  struct Input {
    std::string html;
    ordered_json payload;
    std::string event_name = "novaData";
    int width = 800;
    int height = 600;
    std::string widget_id;
  };
  const std::string marked(kMarkedDoc);
  const std::string fixture(fixture_html);

  std::vector<Input> inputs = {
      {fixture, parse(R"({"a":1})"), "novaData", 800, 600, "deadbeef"},
      {fixture, parse(R"({"nodes":[{"id":"a"},{"id":"b"}],"links":[{"source":"a","target":"b"}]})"),
       "novaData", 400, 300, "a1b2c3d4"},
      {"<!DOCTYPE html><html><head><title>t</title></head><body></body></html>", ordered_json(),
       "novaData", 800, 600, "00000000"},
      {"<!DOCTYPE html>\n<HTML>\n<HEAD lang=\"en\" data-x='a>b'>\n<title>t</title></HEAD></HTML>",
       parse(R"({"k":"v"})"), "novaData", 640, 480, "0123abcd"},
      {"<div id=\"app\"></div>", ordered_json::array(), "novaData", 300, 200, "ffffffff"},
      {"<!-- <head> is not here --><html><head></head><body></body></html>",
       parse(R"({"skip":"comment"})"), "novaData", 800, 600, "12345678"},
      {"<html><script>var s = \"<head>\";</script><head></head></html>", parse("[1,2,3]"),
       "novaData", 800, 600, "9abcdef0"},
      {marked, parse(R"({"x":"</script>"})"), "novaData", 800, 600, "c0ffee00"},
      {marked, parse(R"({"s":"<!-- --> <script> </SCRIPT> <\/script>"})"), "novaData", 800, 600,
       "badc0de1"},
      {marked, parse(R"({"q":"say \"hi\" \\ C:\\path\\n"})"), "novaData", 800, 600, "0badf00d"},
      {marked, parse(R"(["\u0000\u0001\b\t\n\f\r\u001f\u007f"])"), "novaData", 800, 600,
       "10203040"},
      {marked, parse(R"({"emoji":"\ud83d\ude00 \ud834\udd1e \udbff\udfff"})"), "novaData", 800, 600,
       "50607080"},
      {marked, parse(R"(["\u2028", "\u2029", "a\u2028b"])"), "novaData", 800, 600, "90a0b0c0"},
      {marked, parse(R"({"entities":"&amp; &quot; &lt; &#39; & \" '"})"), "novaData", 800, 600,
       "d0e0f001"},
      {marked, parse(R"({"z":{"y":[{"x":[[]]}]},"a":{},"m":[{}]})"), "novaData", 800, 600,
       "aa55aa55"},
      {marked, parse("[0,-1,9007199254740993,-9223372036854775808,1.5,-0.0,1e-7,1e21,0.1,123456789.125]"),
       "novaData", 800, 600, "13579bdf"},
      {marked, parse("[true,false,null]"), "novaData", 800, 600, "2468ace0"},
      {marked, parse(R"({"</script>":1,"a\"b":2,"":3,"\u00fc":4,"&":5})"), "novaData", 800, 600,
       "fedcba98"},
      {marked, parse(R"({"custom":true})"), "graph-data_v2", 1, 1, "01010101"},
      {marked + "<!--NOVA:BOOTSTRAP-->", ordered_json::object(), "novaData", 800, 600, "22222222"},
      {marked, parse(R"({"js":"${x} `tpl` 'single' \u2028 // */ /*"})"), "novaData", 800, 600,
       "33333333"},
      {marked, parse(R"({"text":"\u4e2d\u6587 \u0395\u03bb\u03bb\u03b7\u03bd\u03b9\u03ba\u03ac"})"),
       "novaData", 1920, 1080, "44444444"},
      {"<html><head><iframe srcdoc=\"&quot;&amp;\"></iframe><!--NOVA:BOOTSTRAP--></head></html>",
       parse(R"({"srcdoc":"&quot;"})"), "novaData", 800, 600, "55555555"},
      {marked, parse(R"({"attack":"</SCRIPT><script>alert(1)</script><!--<script>"})"), "Evt",
       800, 600, "66666666"},
  };

  std::vector<ConformanceVector> out;
  int index = 1;
  for (auto& in : inputs) {
    ConformanceVector v;
    v.id = (index < 10 ? "0" : "") + std::to_string(index);
    ++index;
    v.html = std::move(in.html);
    v.payload = std::move(in.payload);
    v.event_name = in.event_name;
    v.width = in.width;
    v.height = in.height;
    v.widget_id = in.widget_id;
    PayloadEnvelope envelope{v.payload, v.event_name, v.widget_id};
    v.expected = render_iframe(v.html, envelope, IframeOptions{v.width, v.height, std::nullopt});
    out.push_back(std::move(v));
  }
  return out;
}

std::string conformance_vectors_json(const std::vector<ConformanceVector>& vectors) {
  ordered_json doc = ordered_json::object();
  doc["format"] = "nova-conformance-v1";
  ordered_json list = ordered_json::array();
  for (const auto& v : vectors) {
    ordered_json item = ordered_json::object();
    item["id"] = v.id;
    item["html"] = v.html;
    item["payload"] = v.payload;
    item["event_name"] = v.event_name;
    item["width"] = v.width;
    item["height"] = v.height;
    item["widget_id"] = v.widget_id;
    item["expected"] = v.expected;
    list.push_back(std::move(item));
  }
  doc["vectors"] = std::move(list);
  return doc.dump(2) + "\n";
}

}  // namespace nova
