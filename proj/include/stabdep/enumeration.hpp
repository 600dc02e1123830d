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

#include <filesystem>
#include <memory>
#include <optional>
#include <span>

#include "stabdep/stabiliser.hpp"

namespace stabdep {

/// Number of Lagrangian subspaces of Z_2^{2n}: prod_{k=1..n} (2^k + 1).
uint64_t lagrangian_count_formula(int n);

/// Number of phase-normalised stabiliser states: 2^n * lagrangian count.
uint64_t state_count_formula(int n);

/// All Lagrangian subspaces of Z_2^{2n}, each as the unique reduced row
/// echelon basis of its packed (q | p) row matrix, sorted by support rank
/// and then lexicographically on the packed row words.
///
/// Entry i occupies words[i*n .. i*n + n); row words store the X part in the
/// high n bits of the 2n-bit value (column order q_1..q_n p_1..p_n, leftmost
/// column most significant).
struct LagrangianList {
  int n = 0;
  std::vector<uint64_t> words;

  uint64_t count() const { return n == 0 ? 0 : words.size() / n; }

  std::span<const uint64_t> entry(uint64_t index) const {
    return {words.data() + index * n, static_cast<size_t>(n)};
  }

  std::vector<SymplecticVector> rows_of(uint64_t index) const;

  /// Number of rows with nonzero X part; entries are RREF so this is the
  /// support rank of every state on this Lagrangian.
  int support_rank_of(uint64_t index) const;
};

struct EnumerationOptions {
  int soft_max_n = 6;
  bool force = false;
};

/// Depth-first enumeration over RREF pivot patterns; each subspace is
/// produced exactly once, then the list is sorted.
LagrangianList enumerate_lagrangians(int n, const EnumerationOptions& options = {});

/// The canonical order on stabiliser states: index = lagrangian * 2^n + lambda,
/// with lambda tuples read as binary integers. Indices 0 .. 2^n - 1 are the
/// computational basis states.
class StateOrdering {
 public:
  explicit StateOrdering(LagrangianList list)
      : list_(std::make_shared<const LagrangianList>(std::move(list))) {}
  explicit StateOrdering(std::shared_ptr<const LagrangianList> list) : list_(std::move(list)) {}

  int qubits() const { return list_->n; }
  uint64_t num_lagrangians() const { return list_->count(); }
  uint64_t num_states() const { return list_->count() << list_->n; }
  uint64_t num_noncomputational() const { return num_states() - (uint64_t{1} << list_->n); }

  uint64_t state_index(uint64_t lagrangian_index, uint64_t lambda) const;
  std::pair<uint64_t, uint64_t> state_of_index(uint64_t state_index) const;

  CheckMatrix check_matrix(uint64_t state_index) const;

  /// Binary search by (support rank, packed words); nullopt if absent.
  std::optional<uint64_t> find_lagrangian(std::span<const uint64_t> entry_words) const;

  const LagrangianList& list() const { return *list_; }
  std::shared_ptr<const LagrangianList> shared_list() const { return list_; }

 private:
  std::shared_ptr<const LagrangianList> list_;
};

/// Binary cache of a LagrangianList ("STLG" format, little endian).
void save_cache(const LagrangianList& list, const std::filesystem::path& path);

/// Loads and validates a cache; throws CorruptFile / MismatchError.
LagrangianList load_cache(const std::filesystem::path& path,
                          std::optional<int> expected_n = std::nullopt);

}  // namespace stabdep
