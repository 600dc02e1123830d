// Copyright 2026 The stabdep authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace stabdep {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad user input: mismatched lengths, out-of-range parameters, malformed data.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An affine system over GF(2) has no solution.
class InconsistentSystem : public Error {
 public:
  using Error::Error;
};

/// A target vector does not lie in the span of the given basis.
class NotInSpan : public Error {
 public:
  using Error::Error;
};

/// A bitstring is not in the support of a stabiliser state.
class NotInSupport : public Error {
 public:
  using Error::Error;
};

/// A split was requested for a computational basis state (support rank 0).
class ComputationalState : public Error {
 public:
  using Error::Error;
};

/// An operation would exceed a configured resource limit.
class ResourceGuard : public Error {
 public:
  using Error::Error;
};

/// A cache or basis file is truncated or fails structural checks.
class CorruptFile : public Error {
 public:
  using Error::Error;
};

/// A file is valid but does not match the requested parameters (n, version).
class MismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace stabdep
