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

#include "stabdep/gf2.hpp"

#include <random>
#include <set>

#include <doctest.h>

using namespace stabdep;

namespace {

BitMatrix matrix_from(int cols, const std::vector<uint64_t>& rows) {
  BitMatrix m(cols);
  for (const uint64_t r : rows) m.append_row(BitVec::from_value(cols, r));
  return m;
}

BitMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<uint64_t> dist(0, (uint64_t{1} << cols) - 1);
  BitMatrix m(cols);
  for (int r = 0; r < rows; ++r) m.append_row(BitVec::from_value(cols, dist(rng)));
  return m;
}

// Mutual span membership by exhaustive combination, usable up to 8 rows.
bool same_row_space(const BitMatrix& a, const BitMatrix& b) {
  const auto spans = [](const BitMatrix& m) {
    std::set<uint64_t> out;
    const int rows = m.row_count();
    for (uint64_t mask = 0; mask < (uint64_t{1} << rows); ++mask) {
      BitVec acc(m.cols());
      for (int r = 0; r < rows; ++r) {
        if ((mask >> r) & 1) acc ^= m.row(r);
      }
      out.insert(acc.value());
    }
    return out;
  };
  return spans(a) == spans(b);
}

}  // namespace

TEST_CASE("bitvec basics") {
  BitVec v = BitVec::from_value(4, 0b1010);
  CHECK(v.get(0));
  CHECK_FALSE(v.get(1));
  CHECK(v.get(2));
  CHECK(v.value() == 0b1010);
  CHECK(v.leading_index() == 0);
  CHECK(BitVec(4).leading_index() == -1);
  CHECK(BitVec::unit(4, 2).value() == 0b0010);
  CHECK_THROWS_AS(BitVec(4) ^ BitVec(5), ValidationError);
  CHECK_THROWS_AS(BitVec(65), ValidationError);
  CHECK_THROWS_AS(BitVec::from_value(2, 5), ValidationError);
  CHECK(BitVec::from_value(3, 0b011).dot(BitVec::from_value(3, 0b110)));
  CHECK_FALSE(BitVec::from_value(3, 0b011).dot(BitVec::from_value(3, 0b100)));
}

TEST_CASE("rref hand cases") {
  SUBCASE("two by two") {
    const RrefResult r = rref(matrix_from(2, {0b11, 0b01}));
    CHECK(r.matrix == matrix_from(2, {0b10, 0b01}));
    REQUIRE(r.ops.size() == 1);
    CHECK(r.ops[0].kind == RowOp::Kind::kAddInto);
    CHECK(r.ops[0].target == 0);
    CHECK(r.ops[0].source == 1);
  }
  SUBCASE("identity is a fixed point") {
    const BitMatrix eye = matrix_from(3, {0b100, 0b010, 0b001});
    const RrefResult r = rref(eye);
    CHECK(r.matrix == eye);
    CHECK(r.ops.empty());
  }
}

TEST_CASE("rref preserves the row space and is idempotent") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    const BitMatrix m = random_matrix(6, 12, rng);
    const BitMatrix reduced = rref(m).matrix;
    CHECK(is_reduced_row_echelon(reduced));
    CHECK(same_row_space(m, reduced));
    CHECK(rref(reduced).matrix == reduced);
  }
}

TEST_CASE("rank") {
  CHECK(rank(matrix_from(3, {0, 0})) == 0);
  CHECK(rank(matrix_from(3, {0b100, 0b010, 0b001})) == 3);
  CHECK(rank(matrix_from(2, {0b11, 0b11})) == 1);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const BitMatrix m = random_matrix(5, 9, rng);
    CHECK(rank(m) == rank(transpose(m)));
  }
}

TEST_CASE("solve_affine") {
  SUBCASE("single constraint") {
    const std::vector<BitVec> rows = {BitVec::from_value(2, 0b10)};
    const std::vector<uint8_t> targets = {1};
    CHECK(solve_affine(rows, targets, 2).value() == 0b10);
  }
  SUBCASE("empty system yields the zero vector") {
    CHECK(solve_affine({}, {}, 3).value() == 0);
  }
  SUBCASE("two variables") {
    const std::vector<BitVec> rows = {BitVec::from_value(2, 0b11), BitVec::from_value(2, 0b01)};
    const std::vector<uint8_t> targets = {1, 0};
    CHECK(solve_affine(rows, targets, 2).value() == 0b10);
  }
  SUBCASE("conflicting dependent rows are detected") {
    const std::vector<BitVec> rows = {BitVec::from_value(2, 0b11), BitVec::from_value(2, 0b11)};
    const std::vector<uint8_t> targets = {0, 1};
    CHECK_THROWS_AS(solve_affine(rows, targets, 2), InconsistentSystem);
  }
  SUBCASE("solutions satisfy their defining equations") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<uint64_t> dist(0, 255);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<BitVec> rows;
      for (int r = 0; r < 3; ++r) rows.push_back(BitVec::from_value(8, dist(rng)));
      if (rank(BitMatrix(8, rows)) != 3) continue;
      std::vector<uint8_t> targets;
      for (int r = 0; r < 3; ++r) targets.push_back(static_cast<uint8_t>(bit(rng)));
      const BitVec x = solve_affine(rows, targets, 8);
      for (int r = 0; r < 3; ++r) CHECK(rows[r].dot(x) == (targets[r] != 0));
    }
  }
}

TEST_CASE("solve_linear_combination") {
  const BitVec e1 = BitVec::from_value(2, 0b10);
  const BitVec e2 = BitVec::from_value(2, 0b01);
  SUBCASE("standard basis") {
    const std::vector<BitVec> basis = {e1, e2};
    CHECK(solve_linear_combination(basis, BitVec::from_value(2, 0b11)).value() == 0b11);
  }
  SUBCASE("zero target") {
    const std::vector<BitVec> basis = {BitVec::from_value(2, 0b11)};
    CHECK(solve_linear_combination(basis, BitVec(2)).value() == 0);
  }
  SUBCASE("out of span") {
    const std::vector<BitVec> basis = {BitVec::from_value(2, 0b11)};
    CHECK_THROWS_AS(solve_linear_combination(basis, e1), NotInSpan);
  }
}
