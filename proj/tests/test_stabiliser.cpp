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

#include <complex>
#include <map>

#include <doctest.h>

#include "stabdep/enumeration.hpp"

using namespace stabdep;

namespace {

using Complex = std::complex<double>;

SymplecticVector sv(int n, uint64_t p, uint64_t q) {
  return {BitVec::from_value(n, p), BitVec::from_value(n, q)};
}

CheckMatrix all_z(int n, uint64_t lambda) {
  std::vector<SymplecticVector> rows;
  for (int j = 0; j < n; ++j) rows.push_back({BitVec::unit(n, j), BitVec(n)});
  return CheckMatrix(rows, BitVec::from_value(n, lambda));
}

CheckMatrix all_x(int n, uint64_t lambda) {
  std::vector<SymplecticVector> rows;
  for (int j = 0; j < n; ++j) rows.push_back({BitVec(n), BitVec::unit(n, j)});
  return CheckMatrix(rows, BitVec::from_value(n, lambda));
}

CheckMatrix bell(uint64_t lambda) {
  return CheckMatrix({sv(2, 0b00, 0b11), sv(2, 0b11, 0b00)}, BitVec::from_value(2, lambda));
}

// Rank-one range extraction from the dense projector onto the joint +1
// eigenspace; an amplitude oracle that never touches the transport code.
std::vector<Complex> projector_state(const CheckMatrix& cm) {
  const int n = cm.qubits();
  const size_t dim = size_t{1} << n;
  std::vector<Complex> projector(dim * dim, {0.0, 0.0});
  for (size_t i = 0; i < dim; ++i) projector[i * dim + i] = 1.0;
  for (int j = 0; j < n; ++j) {
    const DenseMatrix g = dense_matrix(PhasedPauli::canonical(cm.rows[j]));
    const double sign = cm.lambdas.get(j) ? -1.0 : 1.0;
    std::vector<Complex> next(dim * dim, {0.0, 0.0});
    for (size_t r = 0; r < dim; ++r) {
      for (size_t c = 0; c < dim; ++c) {
        Complex acc = projector[r * dim + c];
        for (size_t k = 0; k < dim; ++k) {
          acc += sign * g[r * dim + k] * projector[k * dim + c];
        }
        next[r * dim + c] = 0.5 * acc;
      }
    }
    projector = std::move(next);
  }
  size_t best_col = 0;
  double best_norm = -1.0;
  for (size_t c = 0; c < dim; ++c) {
    double norm = 0.0;
    for (size_t r = 0; r < dim; ++r) norm += std::norm(projector[r * dim + c]);
    if (norm > best_norm) {
      best_norm = norm;
      best_col = c;
    }
  }
  std::vector<Complex> state(dim);
  double norm = 0.0;
  for (size_t r = 0; r < dim; ++r) {
    state[r] = projector[r * dim + best_col];
    norm += std::norm(state[r]);
  }
  REQUIRE(norm > 1e-12);
  for (auto& a : state) a /= std::sqrt(norm);
  // Normalise the global phase at the smallest nonzero amplitude.
  for (size_t r = 0; r < dim; ++r) {
    if (std::abs(state[r]) > 1e-9) {
      const Complex rot = std::abs(state[r]) / state[r];
      for (auto& a : state) a *= rot;
      break;
    }
  }
  return state;
}

void check_matches_projector(const CheckMatrix& cm) {
  const auto got = to_dense_state(amplitudes(cm));
  const auto expected = projector_state(cm);
  REQUIRE(got.size() == expected.size());
  for (size_t i = 0; i < got.size(); ++i) {
    CHECK(std::abs(got[i] - expected[i]) < 1e-12);
  }
}

// (-1)^lambda W |s> = |s>, checked entirely on integer phases.
bool eigen_equations_exact(const CheckMatrix& cm) {
  const ExactAmplitudeTable table = amplitudes(cm);
  std::map<uint64_t, Z4Phase> amp;
  for (const auto& [z, phase] : table.entries) amp.emplace(z, phase);
  for (int j = 0; j < cm.qubits(); ++j) {
    const PhasedPauli w = PhasedPauli::canonical(cm.rows[j]);
    const int lambda2 = cm.lambdas.get(j) ? 2 : 0;
    for (const auto& [z, phase] : table.entries) {
      const BasisAction act = apply_to_basis_state(w, BitVec::from_value(cm.qubits(), z));
      const auto target = amp.find(act.out.value());
      if (target == amp.end()) return false;
      if (!(Z4Phase(phase.k + act.phase.k + lambda2) == target->second)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("support rank hand cases") {
  CHECK(support_rank(all_z(3, 0)) == 0);
  CHECK(support_rank(all_x(3, 0)) == 3);
  CHECK(support_rank(bell(0)) == 1);
}

TEST_CASE("support hand cases") {
  SUBCASE("bell with trivial signs") {
    const AffineSupport s = support(bell(0b00));
    CHECK(s.offset.value() == 0b00);
    REQUIRE(s.basis.size() == 1);
    CHECK(s.basis[0].value() == 0b11);
    CHECK(enumerate_support(s) == std::vector<uint64_t>{0b00, 0b11});
  }
  SUBCASE("bell with a flipped ZZ sign") {
    const AffineSupport s = support(bell(0b01));
    CHECK(s.offset.value() == 0b10);  // deterministic zero-free-variable solve
    CHECK(enumerate_support(s) == std::vector<uint64_t>{0b01, 0b10});
    CHECK(support_anchor(s).value() == 0b01);
  }
  SUBCASE("computational basis state") {
    const AffineSupport s = support(all_z(3, 0b100));
    CHECK(s.rank == 0);
    CHECK(s.offset.value() == 0b100);
    CHECK(enumerate_support(s) == std::vector<uint64_t>{0b100});
  }
}

TEST_CASE("relative phase hand cases") {
  const BitVec zero1 = BitVec::from_value(1, 0);
  const BitVec one1 = BitVec::from_value(1, 1);
  // |+i> has Y check with lambda = 0; ratio between amplitudes is i.
  const CheckMatrix plus_i({sv(1, 1, 1)}, BitVec::from_value(1, 0));
  CHECK(relative_phase(plus_i, zero1, one1) == Z4Phase(1));
  // Bell: both amplitudes equal.
  CHECK(relative_phase(bell(0), BitVec::from_value(2, 0), BitVec::from_value(2, 3)) == Z4Phase(0));
  // |-> = X check with lambda = 1; ratio -1.
  const CheckMatrix minus({sv(1, 0, 1)}, BitVec::from_value(1, 1));
  CHECK(relative_phase(minus, zero1, one1) == Z4Phase(2));
  // Reflexivity and path additivity on a rank-2 state.
  const CheckMatrix xx = all_x(2, 0b10);
  const BitVec l0 = BitVec::from_value(2, 0);
  const BitVec l1 = BitVec::from_value(2, 1);
  const BitVec l2 = BitVec::from_value(2, 2);
  CHECK(relative_phase(xx, l0, l0) == Z4Phase(0));
  CHECK(Z4Phase(relative_phase(xx, l0, l1).k + relative_phase(xx, l1, l2).k) ==
        relative_phase(xx, l0, l2));
  CHECK_THROWS_AS(relative_phase(bell(0), BitVec::from_value(2, 0), BitVec::from_value(2, 1)),
                  NotInSupport);
}

TEST_CASE("amplitude tables for named states") {
  SUBCASE("|0...0>") {
    const ExactAmplitudeTable t = amplitudes(all_z(3, 0));
    CHECK(t.magnitude_exponent == 0);
    REQUIRE(t.entries.size() == 1);
    CHECK(t.entries[0].first == 0);
    CHECK(t.entries[0].second == Z4Phase(0));
  }
  SUBCASE("|->") {
    const ExactAmplitudeTable t = amplitudes(CheckMatrix({sv(1, 0, 1)}, BitVec::from_value(1, 1)));
    CHECK(t.magnitude_exponent == 1);
    REQUIRE(t.entries.size() == 2);
    CHECK(t.entries[0].second == Z4Phase(0));
    CHECK(t.entries[1].second == Z4Phase(2));
  }
  SUBCASE("|+i>") {
    const ExactAmplitudeTable t = amplitudes(CheckMatrix({sv(1, 1, 1)}, BitVec::from_value(1, 0)));
    CHECK(t.magnitude_exponent == 1);
    REQUIRE(t.entries.size() == 2);
    CHECK(t.entries[0].second == Z4Phase(0));
    CHECK(t.entries[1].second == Z4Phase(1));
  }
}

TEST_CASE("exhaustive amplitude checks at small n") {
  for (int n = 1; n <= 2; ++n) {
    const StateOrdering ordering(enumerate_lagrangians(n));
    for (uint64_t idx = 0; idx < ordering.num_states(); ++idx) {
      const CheckMatrix cm = ordering.check_matrix(idx);
      INFO("state ", idx, " at n = ", n);
      const ExactAmplitudeTable table = amplitudes(cm);
      CHECK(table.entries.size() == (uint64_t{1} << support_rank(cm)));
      CHECK(table.entries.front().second == Z4Phase(0));
      CHECK(eigen_equations_exact(cm));
      check_matches_projector(cm);
    }
  }
}

TEST_CASE("exact eigen equations for every three qubit state") {
  const StateOrdering ordering(enumerate_lagrangians(3));
  for (uint64_t idx = 0; idx < ordering.num_states(); ++idx) {
    const CheckMatrix cm = ordering.check_matrix(idx);
    if (!eigen_equations_exact(cm)) {
      FAIL("eigen equation violated at state ", idx);
    }
    const AffineSupport s = support(cm);
    if (enumerate_support(s).size() != s.size()) {
      FAIL("support size mismatch at state ", idx);
    }
  }
}

TEST_CASE("check matrix validation") {
  CHECK_NOTHROW(validate_check_matrix(bell(0)));
  // Swapped rows break the echelon shape.
  CheckMatrix bad({sv(2, 0b11, 0b00), sv(2, 0b00, 0b11)}, BitVec(2));
  CHECK_THROWS_AS(validate_check_matrix(bad), ValidationError);
  // Z and X on one qubit anticommute.
  CheckMatrix anti({sv(2, 0b00, 0b10), sv(2, 0b10, 0b00)}, BitVec(2));
  CHECK_THROWS_AS(validate_check_matrix(anti), ValidationError);
}
