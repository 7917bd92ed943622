// Copyright 2026 The qlab Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qlab {

/// Base of every error thrown by the library. The kind tag lets the CLI map
/// failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    InvalidDimension,
    InvalidSpec,
    Validation,
    ResourceLimit,
    NonConvergence,
    Degenerate,
    UnstableEstimate,
    InvalidTask,
    Config,
    Io,
  };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

inline Error dimension_error(const std::string& what) { return {Error::Kind::InvalidDimension, what}; }
inline Error spec_error(const std::string& what) { return {Error::Kind::InvalidSpec, what}; }
inline Error validation_error(const std::string& what) { return {Error::Kind::Validation, what}; }
inline Error resource_error(const std::string& what) { return {Error::Kind::ResourceLimit, what}; }
inline Error config_error(const std::string& what) { return {Error::Kind::Config, what}; }

}  // namespace qlab
