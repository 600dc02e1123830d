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

#include <algorithm>

namespace stabdep {

RrefResult rref(const BitMatrix& m) {
  BitMatrix out = m;
  RowOps ops;
  std::vector<BitVec> rows = out.rows();
  const int nrows = static_cast<int>(rows.size());
  int next_pivot_row = 0;
  for (int col = 0; col < m.cols() && next_pivot_row < nrows; ++col) {
    int pivot = -1;
    for (int r = next_pivot_row; r < nrows; ++r) {
      if (rows[r].get(col)) {
        pivot = r;
        break;
      }
    }
    if (pivot == -1) continue;
    if (pivot != next_pivot_row) {
      std::swap(rows[pivot], rows[next_pivot_row]);
      ops.push_back({RowOp::Kind::kSwap, next_pivot_row, pivot});
    }
    for (int r = 0; r < nrows; ++r) {
      if (r != next_pivot_row && rows[r].get(col)) {
        rows[r] ^= rows[next_pivot_row];
        ops.push_back({RowOp::Kind::kAddInto, r, next_pivot_row});
      }
    }
    ++next_pivot_row;
  }
  return {BitMatrix(m.cols(), std::move(rows)), std::move(ops)};
}

bool is_reduced_row_echelon(const BitMatrix& m) {
  int prev_pivot = -1;
  bool seen_zero_row = false;
  for (int r = 0; r < m.row_count(); ++r) {
    const int pivot = m.row(r).leading_index();
    if (pivot == -1) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row || pivot <= prev_pivot) return false;
    for (int other = 0; other < m.row_count(); ++other) {
      if (other != r && m.row(other).get(pivot)) return false;
    }
    prev_pivot = pivot;
  }
  return true;
}

int rank(const BitMatrix& m) {
  const BitMatrix reduced = rref(m).matrix;
  int r = 0;
  for (int i = 0; i < reduced.row_count(); ++i) {
    if (reduced.row(i).any()) ++r;
  }
  return r;
}

BitMatrix transpose(const BitMatrix& m) {
  BitMatrix out(m.row_count());
  for (int c = 0; c < m.cols(); ++c) {
    BitVec row(m.row_count());
    for (int r = 0; r < m.row_count(); ++r) {
      row.set(r, m.row(r).get(c));
    }
    out.append_row(row);
  }
  return out;
}

bool in_row_span(const BitMatrix& rref_m, const BitVec& v) {
  BitVec rem = v;
  for (int r = 0; r < rref_m.row_count(); ++r) {
    const int pivot = rref_m.row(r).leading_index();
    if (pivot != -1 && rem.get(pivot)) rem ^= rref_m.row(r);
  }
  return rem.is_zero();
}

AffineSystem::AffineSystem(std::span<const BitVec> rows, int width) : width_(width) {
  BitMatrix m(width);
  for (const BitVec& r : rows) m.append_row(r);
  RrefResult res = rref(m);
  ops_ = std::move(res.ops);
  for (int r = 0; r < res.matrix.row_count(); ++r) {
    const int pivot = res.matrix.row(r).leading_index();
    if (pivot == -1) {
      ++zero_row_count_;
    } else {
      reduced_rows_.push_back(res.matrix.row(r));
      pivot_cols_.push_back(pivot);
    }
  }
}

BitVec AffineSystem::solve(const BitVec& targets) const {
  if (targets.size() != row_count()) {
    throw ValidationError("AffineSystem: target count does not match row count");
  }
  BitVec t = targets;
  for (const RowOp& op : ops_) {
    if (op.kind == RowOp::Kind::kSwap) {
      const bool a = t.get(op.target);
      t.set(op.target, t.get(op.source));
      t.set(op.source, a);
    } else {
      t.set(op.target, t.get(op.target) ^ t.get(op.source));
    }
  }
  const int nonzero = static_cast<int>(pivot_cols_.size());
  for (int r = nonzero; r < t.size(); ++r) {
    if (t.get(r)) throw InconsistentSystem("affine system has no solution");
  }
  // Free variables stay zero, so x[pivot] is exactly the transformed target.
  BitVec x(width_);
  for (int r = 0; r < nonzero; ++r) {
    x.set(pivot_cols_[r], t.get(r));
  }
  return x;
}

BitVec solve_affine(std::span<const BitVec> rows, std::span<const uint8_t> targets, int width) {
  if (rows.size() != targets.size()) {
    throw ValidationError("solve_affine: rows and targets differ in length");
  }
  AffineSystem sys(rows, width);
  BitVec t(static_cast<int>(targets.size()));
  for (size_t i = 0; i < targets.size(); ++i) t.set(static_cast<int>(i), targets[i] & 1);
  return sys.solve(t);
}

SpanSolver::SpanSolver(std::span<const BitVec> basis, int width)
    : width_(width), basis_size_(static_cast<int>(basis.size())) {
  for (const BitVec& b : basis) {
    if (b.size() != width_) throw ValidationError("SpanSolver: basis vector has wrong length");
  }
  // The system runs over coordinates: row c of the matrix holds component c
  // of every basis vector, i.e. the basis laid out as columns.
  BitMatrix m(basis_size_);
  for (int c = 0; c < width_; ++c) {
    BitVec row(basis_size_);
    for (int j = 0; j < basis_size_; ++j) row.set(j, basis[j].get(c));
    m.append_row(row);
  }
  RrefResult res = rref(m);
  ops_ = std::move(res.ops);
  pivot_row_of_col_.assign(basis_size_, -1);
  row_is_pivot_.assign(width_, 0);
  int pivots = 0;
  for (int r = 0; r < res.matrix.row_count(); ++r) {
    const int pivot = res.matrix.row(r).leading_index();
    if (pivot == -1) continue;
    pivot_row_of_col_[pivot] = r;
    row_is_pivot_[r] = 1;
    ++pivots;
  }
  if (pivots != basis_size_) {
    throw ValidationError("SpanSolver requires a linearly independent basis");
  }
}

std::optional<BitVec> SpanSolver::try_solve(const BitVec& target) const {
  if (target.size() != width_) {
    throw ValidationError("SpanSolver: target has wrong length");
  }
  BitVec t = target;
  for (const RowOp& op : ops_) {
    if (op.kind == RowOp::Kind::kSwap) {
      const bool a = t.get(op.target);
      t.set(op.target, t.get(op.source));
      t.set(op.source, a);
    } else {
      t.set(op.target, t.get(op.target) ^ t.get(op.source));
    }
  }
  for (int r = 0; r < width_; ++r) {
    if (!row_is_pivot_[r] && t.get(r)) return std::nullopt;
  }
  BitVec coeffs(basis_size_);
  for (int c = 0; c < basis_size_; ++c) {
    coeffs.set(c, t.get(pivot_row_of_col_[c]));
  }
  return coeffs;
}

BitVec SpanSolver::solve(const BitVec& target) const {
  auto c = try_solve(target);
  if (!c) throw NotInSpan("target vector is not in the span of the basis");
  return *c;
}

BitVec solve_linear_combination(std::span<const BitVec> basis, const BitVec& target) {
  SpanSolver solver(basis, target.size());
  return solver.solve(target);
}

}  // namespace stabdep
