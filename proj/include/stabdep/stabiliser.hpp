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
#include <cstdint>
#include <utility>
#include <vector>

#include "stabdep/pauli.hpp"

namespace stabdep {

/// A stabiliser state as generator data: n symplectic rows whose packed
/// (q | p) matrix is in reduced row echelon form, plus one sign bit per row.
/// Row j generates (-1)^(lambda_j) W(p_j, q_j); the state is the joint +1
/// eigenvector, with the phase convention that the amplitude at the smallest
/// support bitstring is real and positive.
struct CheckMatrix {
  std::vector<SymplecticVector> rows;
  BitVec lambdas;

  CheckMatrix() = default;
  CheckMatrix(std::vector<SymplecticVector> generator_rows, BitVec signs)
      : rows(std::move(generator_rows)), lambdas(std::move(signs)) {}

  int qubits() const { return static_cast<int>(rows.size()); }

  BitMatrix packed() const {
    const int n = qubits();
    BitMatrix m(2 * n);
    for (const SymplecticVector& r : rows) m.append_row(r.to_row());
    return m;
  }
};

/// Throws ValidationError unless rows are independent, pairwise commuting,
/// in reduced row echelon form, and lambdas has one bit per row.
void validate_check_matrix(const CheckMatrix& cm);

/// log2 of the support size: the rank of the matrix of X parts.
int support_rank(const CheckMatrix& cm);

/// The support of a stabiliser state is the affine subspace offset + span(basis).
struct AffineSupport {
  BitVec offset;
  std::vector<BitVec> basis;  // X parts of the rows with nonzero q; RREF shape
  int rank = 0;

  uint64_t size() const { return uint64_t{1} << rank; }
};

AffineSupport support(const CheckMatrix& cm);

/// Smallest element of the affine subspace, as a binary integer.
BitVec support_anchor(const AffineSupport& s);

/// All support bitstrings as integers, in increasing order.
std::vector<uint64_t> enumerate_support(const AffineSupport& s);

/// Transports amplitudes along stabiliser group elements: for l1, l2 in the
/// support, amplitude(l2) = i^phase_between(l1, l2) * amplitude(l1). The
/// transporting Pauli is the product of signed generators whose X parts sum
/// to l1 + l2; it fixes the state, so it carries the amplitude exactly.
class PhaseTransporter {
 public:
  explicit PhaseTransporter(const CheckMatrix& cm);

  Z4Phase phase_between(const BitVec& l1, const BitVec& l2) const;

 private:
  std::vector<SymplecticVector> generators_;  // the rows with nonzero X part
  std::vector<uint8_t> signs_;
  SpanSolver solver_;  // over the X parts of those rows
  int n_ = 0;
};

/// phi with amplitude(l2) = i^phi * amplitude(l1); throws NotInSupport.
Z4Phase relative_phase(const CheckMatrix& cm, const BitVec& l1, const BitVec& l2);

/// Exact amplitudes: every nonzero amplitude is i^phase * 2^(-magnitude_exponent/2),
/// with phase 0 at the smallest support bitstring.
struct ExactAmplitudeTable {
  int n = 0;
  int magnitude_exponent = 0;
  std::vector<std::pair<uint64_t, Z4Phase>> entries;  // sorted by bitstring
};

/// Materialises the amplitude table by transported phases; gated to n <= 12.
ExactAmplitudeTable amplitudes(const CheckMatrix& cm);

std::vector<std::complex<double>> to_dense_state(const ExactAmplitudeTable& table);

}  // namespace stabdep
