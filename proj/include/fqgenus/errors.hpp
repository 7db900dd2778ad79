// Copyright 2026 the fqgenus authors
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

#ifndef FQGENUS_ERRORS_HPP
#define FQGENUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fqgenus {

/// Malformed input text (field literals, polynomial grammar, CLI values).
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// Input is well-formed but outside the supported desk-scale shapes
/// (e.g. radical exponents other than l, l^2, or groups past the BSGS bound).
class unsupported_error : public std::runtime_error {
 public:
  explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical precondition of an operation was violated by the caller
/// (division by zero, non-coprime arguments, ...).
class value_error : public std::runtime_error {
 public:
  explicit value_error(const std::string& what) : std::runtime_error(what) {}
};

/// An internal invariant failed.  Always a bug or corrupted state.
class invariant_error : public std::logic_error {
 public:
  explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

inline void check_invariant(bool ok, const char* what) {
  if (!ok) throw invariant_error(what);
}

}  // namespace fqgenus

#endif  // FQGENUS_ERRORS_HPP
