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

#include "stabdep/verify.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "stabdep/parallel.hpp"

namespace stabdep {

namespace {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

CVec matmul(const CVec& a, const CVec& b, size_t dim) {
  CVec out(dim * dim, {0.0, 0.0});
  for (size_t r = 0; r < dim; ++r) {
    for (size_t k = 0; k < dim; ++k) {
      const Complex ark = a[r * dim + k];
      if (ark == Complex{0.0, 0.0}) continue;
      for (size_t c = 0; c < dim; ++c) out[r * dim + c] += ark * b[k * dim + c];
    }
  }
  return out;
}

bool pauli_case_ok(const PhasedPauli& a, const PhasedPauli& b) {
  const size_t dim = size_t{1} << a.qubits();
  const CVec da = dense_matrix(a);
  const CVec db = dense_matrix(b);
  const CVec product = matmul(da, db, dim);
  const CVec dc = dense_matrix(pauli_multiply(a, b));
  if (product != dc) return false;
  // Commutation must match the symplectic product exactly.
  const CVec reversed = matmul(db, da, dim);
  const bool dense_commutes = product == reversed;
  if (dense_commutes != commutes(a.vec, b.vec)) return false;
  return true;
}

bool pauli_apply_ok(const PhasedPauli& a) {
  const int n = a.qubits();
  const size_t dim = size_t{1} << n;
  const CVec da = dense_matrix(a);
  for (uint64_t z = 0; z < dim; ++z) {
    const BasisAction act = apply_to_basis_state(a, BitVec::from_value(n, z));
    for (uint64_t r = 0; r < dim; ++r) {
      const Complex expected = (r == act.out.value()) ? act.phase.to_complex() : Complex{0.0, 0.0};
      if (da[r * dim + z] != expected) return false;
    }
  }
  return true;
}

bool pauli_hermitian_ok(const SymplecticVector& v) {
  const size_t dim = size_t{1} << v.qubits();
  const CVec d = dense_matrix(PhasedPauli::canonical(v));
  for (size_t r = 0; r < dim; ++r) {
    for (size_t c = 0; c < dim; ++c) {
      if (d[r * dim + c] != std::conj(d[c * dim + r])) return false;
    }
  }
  return true;
}

SymplecticVector vec_from_ints(int n, uint64_t p, uint64_t q) {
  return {BitVec::from_value(n, p), BitVec::from_value(n, q)};
}

// One summand i^phase * 2^(-mag/2), accumulated exactly in the ring
// Z[i, sqrt(2)] after rescaling by the largest magnitude in play.
struct RingAccumulator {
  int64_t re = 0, im = 0;          // integer part
  int64_t re_rt = 0, im_rt = 0;    // sqrt(2) part

  void add(Z4Phase phase, int shift) {
    int64_t* target_re = (shift % 2 == 0) ? &re : &re_rt;
    int64_t* target_im = (shift % 2 == 0) ? &im : &im_rt;
    const int64_t scale = int64_t{1} << (shift / 2);
    switch (phase.k) {
      case 0: *target_re += scale; break;
      case 1: *target_im += scale; break;
      case 2: *target_re -= scale; break;
      default: *target_im -= scale; break;
    }
  }

  bool zero() const { return re == 0 && im == 0 && re_rt == 0 && im_rt == 0; }
};

bool column_exact(const StateOrdering& ordering, const TripleBasis& basis, uint64_t col) {
  const uint64_t first_diag = uint64_t{1} << basis.n;
  struct Term {
    ExactAmplitudeTable table;
    Z4Phase coeff_phase;
    int coeff_mag;  // coefficient magnitude exponent: |coeff| = 2^(-coeff_mag/2)
  };
  std::vector<Term> terms;
  for (int slot = 0; slot < 3; ++slot) {
    const uint64_t row = basis.rows[3 * col + slot];
    const uint8_t code = basis.codes[3 * col + slot];
    Term term;
    term.table = amplitudes(ordering.check_matrix(row));
    if (code == kEntryCodeOne) {
      if (row != first_diag + col) return false;
      term.coeff_phase = Z4Phase(0);
      term.coeff_mag = 0;
    } else {
      term.coeff_phase = Z4Phase(code + 2);  // -2^(-1/2) i^code = i^(code+2) 2^(-1/2)
      term.coeff_mag = 1;
    }
    terms.push_back(std::move(term));
  }
  int max_mag = 0;
  for (const Term& t : terms) max_mag = std::max(max_mag, t.coeff_mag + t.table.magnitude_exponent);
  std::map<uint64_t, RingAccumulator> sums;
  for (const Term& t : terms) {
    const int shift = max_mag - (t.coeff_mag + t.table.magnitude_exponent);
    for (const auto& [z, phase] : t.table.entries) {
      sums[z].add(phase + t.coeff_phase, shift);
    }
  }
  for (const auto& [z, acc] : sums) {
    if (!acc.zero()) return false;
  }
  return true;
}

StateVector random_dense_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  StateVector psi(uint64_t{1} << n);
  for (auto& a : psi) a = {gauss(rng), gauss(rng)};
  const double norm = l2_norm(psi);
  for (auto& a : psi) a /= norm;
  return psi;
}

StateVector random_stabiliser_state(const StateOrdering& ordering, std::mt19937_64& rng) {
  std::uniform_int_distribution<uint64_t> pick(0, ordering.num_states() - 1);
  return to_dense_state(amplitudes(ordering.check_matrix(pick(rng))));
}

}  // namespace

SuiteResult verify_pauli(int n, uint64_t seed) {
  SuiteResult result{"pauli", false, ""};
  if (n < 1 || n > 3) {
    result.detail = "pauli suite runs for 1 <= n <= 3";
    return result;
  }
  uint64_t checked = 0;
  if (n <= 2) {
    const uint64_t space = uint64_t{1} << n;
    for (uint64_t p1 = 0; p1 < space; ++p1) {
      for (uint64_t q1 = 0; q1 < space; ++q1) {
        const SymplecticVector v1 = vec_from_ints(n, p1, q1);
        if (!pauli_hermitian_ok(v1) || !pauli_apply_ok(PhasedPauli::canonical(v1))) {
          result.detail = "dense mismatch on a single Pauli";
          return result;
        }
        for (uint64_t p2 = 0; p2 < space; ++p2) {
          for (uint64_t q2 = 0; q2 < space; ++q2) {
            const SymplecticVector v2 = vec_from_ints(n, p2, q2);
            if (!pauli_case_ok(PhasedPauli::canonical(v1), PhasedPauli::canonical(v2))) {
              result.detail = "dense product mismatch";
              return result;
            }
            ++checked;
          }
        }
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint64_t> bits(0, (uint64_t{1} << n) - 1);
    std::uniform_int_distribution<int> phase(0, 3);
    for (int i = 0; i < 10000; ++i) {
      const PhasedPauli a{vec_from_ints(n, bits(rng), bits(rng)), Z4Phase(phase(rng))};
      const PhasedPauli b{vec_from_ints(n, bits(rng), bits(rng)), Z4Phase(phase(rng))};
      if (!pauli_case_ok(a, b)) {
        result.detail = "dense product mismatch (randomised)";
        return result;
      }
      ++checked;
    }
  }
  result.pass = true;
  result.detail = std::to_string(checked) + " products integer-exact";
  return result;
}

SuiteResult verify_counts(int n) {
  SuiteResult result{"counts", false, ""};
  const LagrangianList list = enumerate_lagrangians(n, {.soft_max_n = 32, .force = true});
  const uint64_t expected = lagrangian_count_formula(n);
  if (list.count() != expected) {
    result.detail = "count " + std::to_string(list.count()) + " != formula " +
                    std::to_string(expected);
    return result;
  }
  for (uint64_t i = 0; i < list.count(); ++i) {
    try {
      validate_check_matrix(CheckMatrix(list.rows_of(i), BitVec(n)));
    } catch (const Error& e) {
      result.detail = "entry " + std::to_string(i) + " invalid: " + e.what();
      return result;
    }
    if (i > 0) {
      const int prev_rank = list.support_rank_of(i - 1);
      const int cur_rank = list.support_rank_of(i);
      const auto prev = list.entry(i - 1);
      const auto cur = list.entry(i);
      const bool ordered =
          prev_rank < cur_rank ||
          (prev_rank == cur_rank &&
           std::lexicographical_compare(prev.begin(), prev.end(), cur.begin(), cur.end()));
      if (!ordered) {
        result.detail = "entries " + std::to_string(i - 1) + ", " + std::to_string(i) +
                        " out of order or duplicated";
        return result;
      }
    }
  }
  if (n <= 4) {
    std::unordered_set<std::string> seen;
    for (uint64_t i = 0; i < list.count(); ++i) {
      const auto e = list.entry(i);
      std::string key(reinterpret_cast<const char*>(e.data()), e.size() * sizeof(uint64_t));
      if (!seen.insert(std::move(key)).second) {
        result.detail = "hash scan found duplicate subspace";
        return result;
      }
    }
  }
  if (n <= 2) {
    // Exhaustive scan: span every commuting independent tuple and collect the
    // canonical forms.
    std::set<std::vector<uint64_t>> scanned;
    const uint64_t space = uint64_t{1} << (2 * n);
    std::vector<uint64_t> picks(n);
    const auto canonicalise = [&](const std::vector<uint64_t>& rows_int) {
      BitMatrix m(2 * n);
      for (const uint64_t w : rows_int) m.append_row(BitVec::from_value(2 * n, w));
      const BitMatrix red = rref(m).matrix;
      std::vector<uint64_t> words;
      for (int r = 0; r < red.row_count(); ++r) {
        if (!red.row(r).any()) return;  // dependent tuple
        words.push_back(red.row(r).value());
      }
      scanned.insert(std::move(words));
    };
    if (n == 1) {
      for (uint64_t v = 1; v < space; ++v) canonicalise({v});
    } else {
      for (uint64_t v1 = 1; v1 < space; ++v1) {
        for (uint64_t v2 = 1; v2 < space; ++v2) {
          if (v1 == v2) continue;
          const auto a = SymplecticVector::from_row(BitVec::from_value(2 * n, v1));
          const auto b = SymplecticVector::from_row(BitVec::from_value(2 * n, v2));
          if (symplectic_product(a, b) == 0) canonicalise({v1, v2});
        }
      }
    }
    std::set<std::vector<uint64_t>> listed;
    for (uint64_t i = 0; i < list.count(); ++i) {
      const auto e = list.entry(i);
      listed.insert(std::vector<uint64_t>(e.begin(), e.end()));
    }
    if (scanned != listed) {
      result.detail = "exhaustive subspace scan disagrees with enumeration";
      return result;
    }
  }
  result.pass = true;
  result.detail = std::to_string(list.count()) + " subspaces, all canonical, sorted, distinct";
  return result;
}

SuiteResult verify_columns(const StateOrdering& ordering, const TripleBasis& basis, int threads) {
  SuiteResult result{"columns", false, ""};
  std::atomic<uint64_t> failures{0};
  parallel_for(basis.num_cols, threads, [&](uint64_t begin, uint64_t end) {
    for (uint64_t col = begin; col < end; ++col) {
      if (!column_exact(ordering, basis, col)) failures.fetch_add(1);
    }
  });
  result.pass = failures.load() == 0;
  result.detail = std::to_string(basis.num_cols - failures.load()) + "/" +
                  std::to_string(basis.num_cols) + " columns exact";
  return result;
}

SuiteResult verify_triangular(const StateOrdering& ordering, const TripleBasis& basis) {
  SuiteResult result{"triangular", false, ""};
  const uint64_t first_diag = uint64_t{1} << basis.n;
  if (basis.num_cols != ordering.num_states() - first_diag) {
    result.detail = "column count is not |S| - 2^n";
    return result;
  }
  const int n = basis.n;
  for (uint64_t col = 0; col < basis.num_cols; ++col) {
    if (basis.rows[3 * col + 2] != first_diag + col ||
        basis.codes[3 * col + 2] != kEntryCodeOne) {
      result.detail = "column " + std::to_string(col) + " has no unit diagonal entry";
      return result;
    }
    const int col_rank = ordering.list().support_rank_of((first_diag + col) >> n);
    for (int slot = 0; slot < 2; ++slot) {
      const uint64_t row = basis.rows[3 * col + slot];
      const uint8_t code = basis.codes[3 * col + slot];
      if (row >= first_diag + col || code > 3) {
        result.detail = "column " + std::to_string(col) + " entry outside the triangle";
        return result;
      }
      const int row_rank = ordering.list().support_rank_of(row >> n);
      if (row_rank >= col_rank) {
        result.detail = "column " + std::to_string(col) + " entry of non-decreasing rank";
        return result;
      }
    }
  }
  result.pass = true;
  result.detail = std::to_string(basis.num_cols) + " columns triangular, dimension |S| - 2^n";
  return result;
}

SuiteResult verify_solve(const StateOrdering& ordering, const TripleBasis& basis, int samples,
                         uint64_t seed) {
  SuiteResult result{"solve", false, ""};
  std::mt19937_64 rng(seed);
  const uint64_t first = uint64_t{1} << basis.n;
  std::uniform_int_distribution<uint64_t> pick(first, ordering.num_states() - 1);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const uint64_t state = pick(rng);
    const CanonicalDependency dep = canonical_dependency(ordering, state);
    const TriangularSolveResult solved = triangular_solve(basis, dep.entries);
    worst = std::max(worst, solved.residual);
  }
  result.pass = worst < 1e-10;
  std::ostringstream os;
  os << samples << " canonical dependencies, worst residual " << worst;
  result.detail = os.str();
  return result;
}

SuiteResult verify_extent_cross(const StateOrdering& ordering, const TripleBasis& basis,
                                const SolverParams& params, int min_states, uint64_t seed) {
  SuiteResult result{"extent-cross", false, ""};
  const int n = ordering.qubits();
  if (n > 4) {
    result.detail = "extent-cross requires n <= 4 (dictionary guard)";
    return result;
  }
  std::vector<StateVector> states;
  states.push_back(t_tensor(n));
  if (n >= 2) states.push_back(ckz_magic(n));
  states.push_back(ghz(n));
  for (int k = 1; k < n; ++k) states.push_back(dicke(n, k));
  std::mt19937_64 rng(seed);
  while (states.size() < static_cast<size_t>(min_states)) {
    states.push_back(random_stabiliser_state(ordering, rng));
    if (states.size() < static_cast<size_t>(min_states)) {
      states.push_back(random_dense_state(n, rng));
    }
  }
  double worst = 0.0;
  for (const StateVector& psi : states) {
    const Decomposition c = computational_decomposition(psi, ordering);
    const ExtentResult via_basis = minimize_l1_affine(c, basis, params, &ordering);
    const ExtentResult via_dict = extent_dictionary(psi, ordering, params);
    worst = std::max(worst, std::abs(via_basis.xi - via_dict.xi));
  }
  result.pass = worst < 1e-4;
  std::ostringstream os;
  os << states.size() << " states, max |xi_basis - xi_dict| = " << worst;
  result.detail = os.str();
  return result;
}

}  // namespace stabdep
