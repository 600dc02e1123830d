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

#include <optional>

#include "stabdep/basis.hpp"
#include "stabdep/states.hpp"

namespace stabdep {

/// A formal linear combination of stabiliser states, indexed by the canonical
/// state order.
struct Decomposition {
  int n = 0;
  SparseVector coefficients;  // sorted by state index
};

struct SolverParams {
  double rho = 1.0;
  uint64_t max_iter = 200000;
  double eps_abs = 1e-8;
  double eps_rel = 1e-7;
  double over_relaxation = 1.6;
  int threads = 1;
};

struct ExtentResult {
  double l1 = 0.0;
  double xi = 0.0;
  uint64_t iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double wall_time_s = 0.0;
  bool converged = false;
  /// Largest observed increase of the feasible objective after iteration 100.
  double objective_backslide = 0.0;
  std::optional<std::pair<int64_t, int64_t>> rational;
  Decomposition decomposition;
};

/// Places the amplitudes of psi on the computational basis rows.
/// Requires unit norm within 1e-12.
Decomposition computational_decomposition(const StateVector& psi, const StateOrdering& ordering);

/// Minimises || c + B x ||_1 over complex x by operator splitting with an
/// auxiliary z = c + B x: the x-update is the exact least-squares projection
/// onto c + range(B), computed through the unit triangular noncomputational
/// block (the orthogonal complement of range(B) has dimension 2^n, so the
/// projection is two triangular solves plus one small cached Hermitian
/// solve), and the z-update is phase-preserving soft thresholding. Returns
/// the squared optimum as xi.
///
/// When an ordering is supplied the converged support is re-solved exactly
/// against the target state, which removes the soft-threshold bias from the
/// reported value; the result is feasible either way.
ExtentResult minimize_l1_affine(const Decomposition& c, const TripleBasis& basis,
                                const SolverParams& params = {},
                                const StateOrdering* ordering = nullptr);

/// Direct dictionary formulation: min ||x||_1 subject to S x = psi over the
/// dense dictionary of all stabiliser states. Independent of the sparse
/// basis; gated to n <= 4.
ExtentResult extent_dictionary(const StateVector& psi, const StateOrdering& ordering,
                               const SolverParams& params = {});

/// Sum of coefficient * state as a dense vector; gated to n <= 12.
StateVector evaluate_decomposition(const Decomposition& d, const StateOrdering& ordering);

/// p/q with q <= 64 if the value is within 1e-6 of such a fraction.
/// Annotation only; never replaces the raw value.
std::optional<std::pair<int64_t, int64_t>> rational_hint(double value);

}  // namespace stabdep
