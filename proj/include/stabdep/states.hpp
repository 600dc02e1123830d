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

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include "stabdep/errors.hpp"

namespace stabdep {

using StateVector = std::vector<std::complex<double>>;

// Bitstring convention, used everywhere: the leftmost character is qubit 1
// and the most significant bit of the basis-state index.

/// Uniform superposition of the n-bit strings of Hamming weight k.
StateVector dicke(int n, int k);

/// C^(n-1)Z applied to |+>^n: uniform amplitudes with the sign flipped on the
/// all-ones string. Requires n >= 2.
StateVector ckz_magic(int n);

/// Tensor power of T|+>: amplitudes 2^(-n/2) e^(i pi wt(z) / 4).
StateVector t_tensor(int n);

/// (|0...0> + |1...1>) / sqrt(2).
StateVector ghz(int n);

/// Text amplitude file: whitespace-separated "bitstring re im" lines,
/// '#' comments; absent bitstrings mean amplitude zero.
StateVector from_file(const std::filesystem::path& path, bool normalize = false);

struct StateSpec {
  enum class Family { kDicke, kCkz, kTTensor, kGhz, kFile };
  Family family;
  int n = 0;
  int k = 0;           // Dicke weight
  std::string path;    // file input

  std::string describe() const;
};

/// Grammar: dicke:n,k | czk:n | t:n | ghz:n | file:path
StateSpec parse_state_spec(const std::string& spec);

StateVector build_state(const StateSpec& spec, bool normalize = false);

int qubit_count_of(const StateVector& psi);

double l2_norm(const StateVector& psi);

}  // namespace stabdep
