// Copyright 2026 The meshplan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MESHPLAN_ERRORS_HPP
#define MESHPLAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace meshplan {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid dimensions, radio parameters or configuration values.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Malformed, truncated or version-mismatched files.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// No capacity-respecting path from a demand-carrying site to any gateway.
class RoutingInfeasible : public Error {
 public:
  RoutingInfeasible(int site, const std::string& what)
      : Error(what), stranded_site_(site) {}
  int stranded_site() const noexcept { return stranded_site_; }

 private:
  int stranded_site_;
};

// The construction pipeline could not produce a feasible solution.
class ConstructionInfeasible : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration refused because the instance exceeds the guard.
class GuardRefusal : public Error {
 public:
  using Error::Error;
};

}  // namespace meshplan

#endif  // MESHPLAN_ERRORS_HPP
