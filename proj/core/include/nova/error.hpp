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

#ifndef NOVA_ERROR_HPP_
#define NOVA_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace nova {

// Base class for every error raised by the toolchain. Messages are meant to be
// shown to users verbatim, so they name the offending key, path or location.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class BundleError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

class CodegenError : public Error {
 public:
  using Error::Error;
};

}  // namespace nova

#endif  // NOVA_ERROR_HPP_
