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
#include <vector>

#include "stabdep/gf2.hpp"

namespace stabdep {

/// A power of i, i.e. an integer mod 4. All Pauli phase bookkeeping is done
/// in this group; no floating point enters until states are materialised.
struct Z4Phase {
  uint8_t k = 0;

  Z4Phase() = default;
  explicit Z4Phase(int value) : k(static_cast<uint8_t>(((value % 4) + 4) % 4)) {}

  Z4Phase operator+(Z4Phase other) const { return Z4Phase(k + other.k); }
  Z4Phase operator-(Z4Phase other) const { return Z4Phase(int(k) - int(other.k)); }
  Z4Phase& operator+=(Z4Phase other) {
    k = (k + other.k) & 3;
    return *this;
  }

  std::complex<double> to_complex() const {
    switch (k) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }

  friend bool operator==(Z4Phase a, Z4Phase b) { return a.k == b.k; }
};

/// A point of Z_2^{2n} labelling a Pauli operator up to phase.
struct SymplecticVector {
  BitVec p;  // Z part
  BitVec q;  // X part

  SymplecticVector() = default;
  SymplecticVector(BitVec p_part, BitVec q_part) : p(std::move(p_part)), q(std::move(q_part)) {
    if (p.size() != q.size()) throw ValidationError("SymplecticVector: p and q lengths differ");
  }

  static SymplecticVector zero(int n) { return {BitVec(n), BitVec(n)}; }

  int qubits() const { return p.size(); }

  SymplecticVector operator^(const SymplecticVector& other) const {
    return {p ^ other.p, q ^ other.q};
  }

  /// Packed 2n-bit row in (q | p) column order: q components first.
  BitVec to_row() const {
    const int n = qubits();
    return BitVec::from_value(2 * n, (q.value() << n) | p.value());
  }

  static SymplecticVector from_row(const BitVec& row) {
    const int n = row.size() / 2;
    if (row.size() != 2 * n) throw ValidationError("symplectic row must have even length");
    const uint64_t mask = (n == 64) ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
    return {BitVec::from_value(n, row.value() & mask), BitVec::from_value(n, row.value() >> n)};
  }

  friend bool operator==(const SymplecticVector& a, const SymplecticVector& b) {
    return a.p == b.p && a.q == b.q;
  }
};

/// Symplectic product [a, b] = a.p . b.q - b.p . a.q (mod 2).
/// Zero exactly when the corresponding Paulis commute.
int symplectic_product(const SymplecticVector& a, const SymplecticVector& b);

/// A Pauli operator with an exact global phase: i^phase times the canonical
/// Hermitian representative W(p, q) = (-i)^(p.q mod 4) Z^p X^q.
struct PhasedPauli {
  SymplecticVector vec;
  Z4Phase phase;

  static PhasedPauli identity(int n) { return {SymplecticVector::zero(n), Z4Phase(0)}; }
  static PhasedPauli canonical(SymplecticVector v) { return {std::move(v), Z4Phase(0)}; }

  int qubits() const { return vec.qubits(); }
};

/// Exact operator product. The phase rule is fixed by the dense-matrix
/// identity dense(a*b) == dense(a) * dense(b), which the tests enforce.
PhasedPauli pauli_multiply(const PhasedPauli& a, const PhasedPauli& b);

struct BasisAction {
  Z4Phase phase;
  BitVec out;
};

/// a |z> = i^phase |out>, computed in integer arithmetic only.
BasisAction apply_to_basis_state(const PhasedPauli& a, const BitVec& z);

bool commutes(const SymplecticVector& a, const SymplecticVector& b);

/// Row-major 2^n x 2^n matrix; test support, gated to n <= 4.
using DenseMatrix = std::vector<std::complex<double>>;
DenseMatrix dense_matrix(const PhasedPauli& a);

}  // namespace stabdep
