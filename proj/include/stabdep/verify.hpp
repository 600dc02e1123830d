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

#include <string>

#include "stabdep/solver.hpp"

namespace stabdep {

struct SuiteResult {
  std::string suite;
  bool pass = false;
  std::string detail;
};

/// Dense-matrix equivalence of multiplication, basis action and commutation:
/// exhaustive at n <= 2, randomised at n == 3, with zero tolerance.
SuiteResult verify_pauli(int n, uint64_t seed = 7);

/// Enumeration invariants: product-formula count, canonical entries, strict
/// ordering, a hash-based duplicate scan at n <= 4 and an exhaustive
/// subspace scan at n <= 2.
SuiteResult verify_counts(int n);

/// Every basis column, evaluated against exact amplitude tables in the ring
/// generated by i and sqrt(2), must sum to the identically-zero vector.
SuiteResult verify_columns(const StateOrdering& ordering, const TripleBasis& basis,
                           int threads = 1);

/// Structural checks: column count |S| - 2^n, unit diagonal on the
/// noncomputational block, and off-diagonal entries of strictly smaller
/// support rank.
SuiteResult verify_triangular(const StateOrdering& ordering, const TripleBasis& basis);

/// Forward substitution on random canonical dependencies must reproduce them
/// with residual below 1e-10.
SuiteResult verify_solve(const StateOrdering& ordering, const TripleBasis& basis,
                         int samples = 100, uint64_t seed = 11);

/// The sparse-basis and dense-dictionary extents agree within 1e-4 on a mix
/// of benchmark, random stabiliser and random dense states.
SuiteResult verify_extent_cross(const StateOrdering& ordering, const TripleBasis& basis,
                                const SolverParams& params = {}, int min_states = 10,
                                uint64_t seed = 13);

}  // namespace stabdep
