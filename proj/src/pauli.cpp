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

#include "stabdep/pauli.hpp"

namespace stabdep {

int symplectic_product(const SymplecticVector& a, const SymplecticVector& b) {
  if (a.qubits() != b.qubits()) throw ValidationError("symplectic_product: length mismatch");
  return (a.p.and_popcount(b.q) + b.p.and_popcount(a.q)) & 1;
}

bool commutes(const SymplecticVector& a, const SymplecticVector& b) {
  return symplectic_product(a, b) == 0;
}

PhasedPauli pauli_multiply(const PhasedPauli& a, const PhasedPauli& b) {
  if (a.qubits() != b.qubits()) throw ValidationError("pauli_multiply: length mismatch");
  // Commute X^q1 past Z^p2, then renormalise Z^p X^q back to canonical form:
  //   W1 W2 = i^(-a1 - a2 + 2 (q1.p2) + a12) W(p1+p2, q1+q2)
  // with a1 = p1.q1, a2 = p2.q2, a12 = (p1+p2).(q1+q2), all integer products.
  const SymplecticVector out = a.vec ^ b.vec;
  const int a1 = a.vec.p.and_popcount(a.vec.q);
  const int a2 = b.vec.p.and_popcount(b.vec.q);
  const int a12 = out.p.and_popcount(out.q);
  const int cross = 2 * a.vec.q.and_popcount(b.vec.p);
  const Z4Phase phase =
      a.phase + b.phase + Z4Phase(-a1) + Z4Phase(-a2) + Z4Phase(cross) + Z4Phase(a12);
  return {out, phase};
}

BasisAction apply_to_basis_state(const PhasedPauli& a, const BitVec& z) {
  if (z.size() != a.qubits()) throw ValidationError("apply_to_basis_state: length mismatch");
  const BitVec out = z ^ a.vec.q;
  const int prefactor = a.vec.p.and_popcount(a.vec.q);  // from (-i)^(p.q)
  const int sign = 2 * out.and_popcount(a.vec.p);       // from Z^p on |z+q>
  return {a.phase + Z4Phase(-prefactor) + Z4Phase(sign), out};
}

namespace {

DenseMatrix kron(const DenseMatrix& a, size_t adim, const DenseMatrix& b, size_t bdim) {
  const size_t dim = adim * bdim;
  DenseMatrix out(dim * dim);
  for (size_t ar = 0; ar < adim; ++ar) {
    for (size_t ac = 0; ac < adim; ++ac) {
      for (size_t br = 0; br < bdim; ++br) {
        for (size_t bc = 0; bc < bdim; ++bc) {
          out[(ar * bdim + br) * dim + (ac * bdim + bc)] = a[ar * adim + ac] * b[br * bdim + bc];
        }
      }
    }
  }
  return out;
}

DenseMatrix matmul2(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(4, {0.0, 0.0});
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      for (int k = 0; k < 2; ++k) out[r * 2 + c] += a[r * 2 + k] * b[k * 2 + c];
    }
  }
  return out;
}

}  // namespace

DenseMatrix dense_matrix(const PhasedPauli& a) {
  const int n = a.qubits();
  if (n < 1 || n > 4) throw ResourceGuard("dense_matrix is gated to 1 <= n <= 4");
  // Built from literal 2x2 Z and X factors by Kronecker products, so it is an
  // independent reference for the algebraic phase rules. Qubit 0 is the
  // outermost (most significant) tensor factor.
  const DenseMatrix eye = {{1, 0}, {0, 0}, {0, 0}, {1, 0}};
  const DenseMatrix zmat = {{1, 0}, {0, 0}, {0, 0}, {-1, 0}};
  const DenseMatrix xmat = {{0, 0}, {1, 0}, {1, 0}, {0, 0}};
  DenseMatrix m = {{1, 0}};
  size_t dim = 1;
  for (int j = 0; j < n; ++j) {
    DenseMatrix factor = eye;
    if (a.vec.p.get(j)) factor = zmat;
    if (a.vec.q.get(j)) factor = matmul2(factor, xmat);
    m = kron(m, dim, factor, 2);
    dim *= 2;
  }
  std::complex<double> prefactor = a.phase.to_complex();
  prefactor *= Z4Phase(-a.vec.p.and_popcount(a.vec.q)).to_complex();
  for (auto& entry : m) entry *= prefactor;
  return m;
}

}  // namespace stabdep
