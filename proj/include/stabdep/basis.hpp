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

#include <array>
#include <complex>
#include <filesystem>

#include "stabdep/enumeration.hpp"

namespace stabdep {

/// Basis entries take exactly five values. Code 255 encodes +1 (the diagonal
/// of the noncomputational block); codes 0..3 encode -2^(-1/2) * i^code.
inline constexpr uint8_t kEntryCodeOne = 255;

std::complex<double> decode_entry(uint8_t code);

/// Splitting a noncomputational stabiliser state |s> with support 2^r gives
/// two states |t1>, |t2> on one common Lagrangian with support 2^(r-1) each
/// and |s> = 2^(-1/2) (i^a |t1'> + i^b |t2'>) over phase-normalised children.
struct SplitResult {
  std::vector<SymplecticVector> child_rows;  // common check rows, RREF
  std::array<BitVec, 2> child_lambdas;       // ordered by child support anchor
  std::array<Z4Phase, 2> taus;               // tau_j^{-1} = i^taus[j]; taus[0] = 0
  std::array<BitVec, 2> anchors;             // anchors[0] < anchors[1]
};

SplitResult split(const CheckMatrix& cm);

/// Everything about a split that does not depend on the lambda tuple,
/// prepared once per Lagrangian so columns can be generated cheaply.
class SplitContext {
 public:
  explicit SplitContext(std::vector<SymplecticVector> parent_rows);

  SplitResult split_for(const BitVec& parent_lambdas) const;

  const std::vector<SymplecticVector>& child_rows() const { return child_rows_; }
  std::vector<uint64_t> child_packed_words() const;
  int parent_rank() const { return parent_rank_; }

  /// i^phase moving the parent amplitude from l1 to l2.
  Z4Phase parent_phase_between(const BitVec& l1, const BitVec& l2,
                               const BitVec& parent_lambdas) const;

 private:
  struct LambdaOp {
    RowOp::Kind kind;
    int target;
    int source;
    uint8_t flip;  // extra sign from the Pauli product on kAddInto
  };

  int n_ = 0;
  int parent_rank_ = 0;
  std::vector<SymplecticVector> parent_rows_;
  SpanSolver parent_q_solver_;  // over the X parts of the first parent_rank rows
  std::vector<SymplecticVector> child_rows_;
  std::vector<LambdaOp> lambda_ops_;
  AffineSystem child_offset_system_;  // from the q = 0 rows of the child RREF
  std::vector<BitVec> child_support_basis_;
};

/// Sparse basis of the space of linear dependencies: one column per
/// noncomputational state, exactly three entries per column, unit diagonal
/// on the noncomputational block and all other entries strictly above it.
struct TripleBasis {
  int n = 0;
  uint64_t num_rows = 0;
  uint64_t num_cols = 0;
  // Column j occupies slots 3j .. 3j+2, sorted by row; the diagonal entry
  // (row 2^n + j, code 255) is always last.
  std::vector<uint64_t> rows;
  std::vector<uint8_t> codes;

  uint64_t nnz() const { return rows.size(); }
};

struct BuildOptions {
  int threads = 1;
  uint64_t max_mem_bytes = uint64_t{16} << 30;
  bool force = false;
};

TripleBasis build_basis(const StateOrdering& ordering, const BuildOptions& options = {});

using SparseEntry = std::pair<uint64_t, std::complex<double>>;
using SparseVector = std::vector<SparseEntry>;  // sorted by index

/// The canonical dependency of a noncomputational state: coefficient 1 at the
/// state and minus its amplitude at each computational basis row.
struct CanonicalDependency {
  uint64_t state = 0;
  SparseVector entries;
};

CanonicalDependency canonical_dependency(const StateOrdering& ordering, uint64_t state_index);

struct TriangularSolveResult {
  SparseVector x;
  double residual = 0.0;  // Euclidean norm left on the computational rows
};

/// Unique x with B x = gamma via back substitution on the noncomputational
/// block; the residual reports how far gamma is from a true dependency.
TriangularSolveResult triangular_solve(const TripleBasis& basis, const SparseVector& gamma);

enum class BasisFormat { kBinary, kCsv };

void export_basis(const TripleBasis& basis, const std::filesystem::path& path, BasisFormat format);

/// Builds and writes the basis chunk by chunk so export-only runs never hold
/// the whole matrix; the file is identical to build_basis + export_basis.
void write_basis_file(const StateOrdering& ordering, const BuildOptions& options,
                      const std::filesystem::path& path, BasisFormat format);

/// Reads the binary "STBB" format back; throws CorruptFile / MismatchError.
TripleBasis import_basis(const std::filesystem::path& path);

}  // namespace stabdep
