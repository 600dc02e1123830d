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

#include "stabdep/stabiliser.hpp"

#include <algorithm>
#include <cmath>

namespace stabdep {

void validate_check_matrix(const CheckMatrix& cm) {
  const int n = cm.qubits();
  if (n < 1 || n > 32) throw ValidationError("check matrix must have 1 to 32 rows");
  if (cm.lambdas.size() != n) throw ValidationError("lambda bit count must equal row count");
  for (const SymplecticVector& r : cm.rows) {
    if (r.qubits() != n) throw ValidationError("check matrix row has wrong qubit count");
  }
  const BitMatrix m = cm.packed();
  if (!is_reduced_row_echelon(m)) {
    throw ValidationError("check matrix rows are not in reduced row echelon form");
  }
  for (int i = 0; i < n; ++i) {
    if (!m.row(i).any()) throw ValidationError("check matrix rows are not independent");
    for (int j = i + 1; j < n; ++j) {
      if (symplectic_product(cm.rows[i], cm.rows[j]) != 0) {
        throw ValidationError("check matrix rows do not pairwise commute");
      }
    }
  }
}

int support_rank(const CheckMatrix& cm) {
  // In RREF with (q | p) column order, the rows with nonzero X part come
  // first and their X parts are independent, so counting them is the rank.
  int k = 0;
  for (const SymplecticVector& r : cm.rows) {
    if (r.q.any()) ++k;
  }
  return k;
}

AffineSupport support(const CheckMatrix& cm) {
  const int n = cm.qubits();
  const int k = support_rank(cm);
  AffineSupport s;
  s.rank = k;
  for (int j = 0; j < k; ++j) {
    if (!cm.rows[j].q.any()) throw ValidationError("check matrix is not in canonical row order");
    s.basis.push_back(cm.rows[j].q);
  }
  if (k == n) {
    s.offset = BitVec(n);
    return s;
  }
  std::vector<BitVec> constraint_rows;
  std::vector<uint8_t> targets;
  for (int j = k; j < n; ++j) {
    if (cm.rows[j].q.any()) throw ValidationError("check matrix is not in canonical row order");
    constraint_rows.push_back(cm.rows[j].p);
    targets.push_back(cm.lambdas.get(j) ? 1 : 0);
  }
  s.offset = solve_affine(constraint_rows, targets, n);
  return s;
}

BitVec support_anchor(const AffineSupport& s) {
  // The basis is in RREF, so clearing the offset at each pivot in turn
  // reaches the minimum element of the coset.
  BitVec a = s.offset;
  for (const BitVec& b : s.basis) {
    const int pivot = b.leading_index();
    if (pivot != -1 && a.get(pivot)) a ^= b;
  }
  return a;
}

std::vector<uint64_t> enumerate_support(const AffineSupport& s) {
  std::vector<uint64_t> out;
  out.reserve(s.size());
  const BitVec anchor = support_anchor(s);
  for (uint64_t combo = 0; combo < s.size(); ++combo) {
    BitVec z = anchor;
    for (int j = 0; j < s.rank; ++j) {
      if ((combo >> j) & 1) z ^= s.basis[j];
    }
    out.push_back(z.value());
  }
  std::sort(out.begin(), out.end());
  return out;
}

PhaseTransporter::PhaseTransporter(const CheckMatrix& cm) : n_(cm.qubits()) {
  const int rank = support_rank(cm);
  std::vector<BitVec> basis;
  basis.reserve(rank);
  for (int j = 0; j < rank; ++j) {
    generators_.push_back(cm.rows[j]);
    signs_.push_back(cm.lambdas.get(j) ? 1 : 0);
    basis.push_back(cm.rows[j].q);
  }
  solver_ = SpanSolver(basis, n_);
}

Z4Phase PhaseTransporter::phase_between(const BitVec& l1, const BitVec& l2) const {
  const auto coeffs = solver_.try_solve(l1 ^ l2);
  if (!coeffs) throw NotInSupport("bitstrings are not connected within the support");
  PhasedPauli g = PhasedPauli::identity(n_);
  int sign_flips = 0;
  for (size_t j = 0; j < generators_.size(); ++j) {
    if (coeffs->get(static_cast<int>(j))) {
      g = pauli_multiply(g, PhasedPauli::canonical(generators_[j]));
      sign_flips += signs_[j];
    }
  }
  g.phase += Z4Phase(2 * sign_flips);  // fold the (-1)^lambda eigenvalue signs
  const BasisAction action = apply_to_basis_state(g, l1);
  if (!(action.out == l2)) throw NotInSupport("transport did not land on the target bitstring");
  return action.phase;
}

Z4Phase relative_phase(const CheckMatrix& cm, const BitVec& l1, const BitVec& l2) {
  return PhaseTransporter(cm).phase_between(l1, l2);
}

ExactAmplitudeTable amplitudes(const CheckMatrix& cm) {
  const int n = cm.qubits();
  const AffineSupport s = support(cm);
  if (s.rank > 12) throw ResourceGuard("amplitude table is gated to support rank <= 12");
  const PhaseTransporter transporter(cm);
  const BitVec anchor = support_anchor(s);

  ExactAmplitudeTable table;
  table.n = n;
  table.magnitude_exponent = s.rank;
  table.entries.reserve(s.size());
  for (uint64_t combo = 0; combo < s.size(); ++combo) {
    BitVec z = anchor;
    for (int j = 0; j < s.rank; ++j) {
      if ((combo >> j) & 1) z ^= s.basis[j];
    }
    table.entries.emplace_back(z.value(), transporter.phase_between(anchor, z));
  }
  std::sort(table.entries.begin(), table.entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return table;
}

std::vector<std::complex<double>> to_dense_state(const ExactAmplitudeTable& table) {
  std::vector<std::complex<double>> out(size_t{1} << table.n, {0.0, 0.0});
  const double mag = std::pow(2.0, -0.5 * table.magnitude_exponent);
  for (const auto& [z, phase] : table.entries) {
    out[z] = phase.to_complex() * mag;
  }
  return out;
}

}  // namespace stabdep
