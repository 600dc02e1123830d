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

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stabdep/errors.hpp"

namespace stabdep {

/// Fixed-length bit vector over GF(2), at most 64 bits, packed in one word.
///
/// Component j lives at word bit (size - 1 - j), so value() reads the vector
/// as a binary integer with component 0 as the most significant digit and
/// integer comparison coincides with lexicographic comparison of components.
class BitVec {
 public:
  BitVec() : len_(0), word_(0) {}

  explicit BitVec(int len) : len_(check_len(len)), word_(0) {}

  static BitVec from_value(int len, uint64_t value) {
    BitVec v(len);
    if (len < 64 && (value >> len) != 0) {
      throw ValidationError("BitVec value does not fit in declared length");
    }
    v.word_ = value;
    return v;
  }

  static BitVec unit(int len, int index) {
    BitVec v(len);
    v.set(index, true);
    return v;
  }

  int size() const { return len_; }

  bool get(int index) const {
    check_index(index);
    return (word_ >> (len_ - 1 - index)) & 1u;
  }

  void set(int index, bool bit) {
    check_index(index);
    const uint64_t mask = uint64_t{1} << (len_ - 1 - index);
    if (bit) {
      word_ |= mask;
    } else {
      word_ &= ~mask;
    }
  }

  /// The vector read as a binary integer, component 0 most significant.
  uint64_t value() const { return word_; }

  bool any() const { return word_ != 0; }
  bool is_zero() const { return word_ == 0; }
  int popcount() const { return std::popcount(word_); }

  /// Index of the first nonzero component, or -1 for the zero vector.
  int leading_index() const {
    if (word_ == 0) return -1;
    return len_ - 1 - (63 - std::countl_zero(word_));
  }

  BitVec& operator^=(const BitVec& other) {
    check_same_length(other);
    word_ ^= other.word_;
    return *this;
  }

  BitVec operator^(const BitVec& other) const {
    BitVec r = *this;
    r ^= other;
    return r;
  }

  /// Inner product mod 2.
  bool dot(const BitVec& other) const {
    check_same_length(other);
    return std::popcount(word_ & other.word_) & 1;
  }

  /// Number of components where both vectors are 1 (integer, not mod 2).
  int and_popcount(const BitVec& other) const {
    check_same_length(other);
    return std::popcount(word_ & other.word_);
  }

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.len_ == b.len_ && a.word_ == b.word_;
  }

  friend std::strong_ordering operator<=>(const BitVec& a, const BitVec& b) {
    if (auto c = a.len_ <=> b.len_; c != 0) return c;
    return a.word_ <=> b.word_;
  }

 private:
  static int check_len(int len) {
    if (len < 0 || len > 64) {
      throw ValidationError("BitVec length must be between 0 and 64");
    }
    return len;
  }

  void check_index(int index) const {
    if (index < 0 || index >= len_) {
      throw ValidationError("BitVec index out of range");
    }
  }

  void check_same_length(const BitVec& other) const {
    if (len_ != other.len_) {
      throw ValidationError("BitVec length mismatch");
    }
  }

  int len_;
  uint64_t word_;
};

/// One elementary row operation, recorded so callers can replay the exact
/// transformation on data carried alongside the rows (e.g. sign bits).
struct RowOp {
  enum class Kind : uint8_t { kSwap, kAddInto };
  Kind kind;
  // kSwap: rows target and source are exchanged.
  // kAddInto: rows[target] ^= rows[source].
  int target;
  int source;
};

using RowOps = std::vector<RowOp>;

/// Rectangular bit matrix; all rows share one declared column count.
class BitMatrix {
 public:
  explicit BitMatrix(int cols) : cols_(check_cols(cols)) {}

  BitMatrix(int cols, std::vector<BitVec> rows) : cols_(check_cols(cols)), rows_(std::move(rows)) {
    for (const BitVec& r : rows_) {
      if (r.size() != cols_) throw ValidationError("BitMatrix row has wrong length");
    }
  }

  int cols() const { return cols_; }
  int row_count() const { return static_cast<int>(rows_.size()); }
  const BitVec& row(int i) const { return rows_.at(i); }
  const std::vector<BitVec>& rows() const { return rows_; }

  void append_row(const BitVec& r) {
    if (r.size() != cols_) throw ValidationError("BitMatrix row has wrong length");
    rows_.push_back(r);
  }

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  static int check_cols(int cols) {
    if (cols < 0 || cols > 64) {
      throw ValidationError("BitMatrix column count must be between 0 and 64");
    }
    return cols;
  }

  int cols_;
  std::vector<BitVec> rows_;
};

struct RrefResult {
  BitMatrix matrix;
  RowOps ops;
};

/// Reduced row echelon form together with the exact row operations applied.
RrefResult rref(const BitMatrix& m);

/// True iff pivots strictly increase, pivot columns are zero in every other
/// row, and all zero rows sit at the bottom.
bool is_reduced_row_echelon(const BitMatrix& m);

int rank(const BitMatrix& m);

BitMatrix transpose(const BitMatrix& m);

/// True iff v is a GF(2) linear combination of the rows of rref_m.
/// rref_m must be in reduced row echelon form.
bool in_row_span(const BitMatrix& rref_m, const BitVec& v);

/// Solves rows[j] . x = targets[j] (mod 2) for one x of the given width.
/// Free variables are set to zero, so the result is deterministic.
BitVec solve_affine(std::span<const BitVec> rows, std::span<const uint8_t> targets, int width);

/// Coefficients a with sum_j a[j] * basis[j] == target; throws NotInSpan.
/// Free coefficients are set to zero.
BitVec solve_linear_combination(std::span<const BitVec> basis, const BitVec& target);

/// Prepared form of solve_affine for a fixed row set and many target tuples.
class AffineSystem {
 public:
  AffineSystem() = default;
  AffineSystem(std::span<const BitVec> rows, int width);

  /// targets holds one bit per original row.
  BitVec solve(const BitVec& targets) const;

  int width() const { return width_; }
  int row_count() const { return static_cast<int>(pivot_cols_.size()) + zero_row_count_; }

 private:
  int width_ = 0;
  RowOps ops_;
  std::vector<BitVec> reduced_rows_;  // nonzero rows of the RREF
  std::vector<int> pivot_cols_;       // pivot column per nonzero row
  int zero_row_count_ = 0;
};

/// Prepared form of solve_linear_combination for a fixed basis.
class SpanSolver {
 public:
  SpanSolver() = default;
  SpanSolver(std::span<const BitVec> basis, int width);

  /// Returns coefficients over the basis, or nothing if target is out of span.
  /// Basis vectors must be linearly independent.
  std::optional<BitVec> try_solve(const BitVec& target) const;
  BitVec solve(const BitVec& target) const;

  int basis_size() const { return basis_size_; }

 private:
  int width_ = 0;
  int basis_size_ = 0;
  RowOps ops_;                  // row ops over coordinate space
  std::vector<int> pivot_row_of_col_;  // per basis column, its pivot row
  std::vector<uint8_t> row_is_pivot_;
};

}  // namespace stabdep
