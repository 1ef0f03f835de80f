// Copyright 2026 The TLDG Authors.
//
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

#ifndef TLDG_ERRORS_HPP_
#define TLDG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tldg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (bad profile, zero samples...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A mathematical guarantee failed to hold, e.g. a linear system that must be
// nonsingular turned out singular. Always a bug, never bad input.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace tldg

#endif  // TLDG_ERRORS_HPP_
