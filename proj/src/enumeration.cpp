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

#include "stabdep/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>

namespace stabdep {

uint64_t lagrangian_count_formula(int n) {
  if (n < 1 || n > 32) throw ValidationError("qubit count must be between 1 and 32");
  if (n > 10) throw ResourceGuard("Lagrangian count exceeds 64 bits beyond n = 10");
  uint64_t c = 1;
  for (int k = 1; k <= n; ++k) c *= (uint64_t{1} << k) + 1;
  return c;
}

uint64_t state_count_formula(int n) {
  if (n > 9) throw ResourceGuard("state count exceeds 64 bits beyond n = 9");
  return lagrangian_count_formula(n) << n;
}

std::vector<SymplecticVector> LagrangianList::rows_of(uint64_t index) const {
  std::vector<SymplecticVector> rows;
  rows.reserve(n);
  for (const uint64_t w : entry(index)) {
    rows.push_back(SymplecticVector::from_row(BitVec::from_value(2 * n, w)));
  }
  return rows;
}

int LagrangianList::support_rank_of(uint64_t index) const {
  int rank = 0;
  for (const uint64_t w : entry(index)) {
    if ((w >> n) != 0) ++rank;  // X part occupies the high n bits
  }
  return rank;
}

namespace {

// Rows are packed 2n-bit words with column c at bit (2n - 1 - c); the X block
// is the high half. The symplectic product only mixes opposite blocks.
struct PackedSymplectic {
  int n;
  uint64_t low_mask;

  uint64_t x_part(uint64_t w) const { return w >> n; }
  uint64_t z_part(uint64_t w) const { return w & low_mask; }

  int product(uint64_t a, uint64_t b) const {
    return (std::popcount(z_part(a) & x_part(b)) + std::popcount(z_part(b) & x_part(a))) & 1;
  }

  uint64_t column_unit(uint64_t c) const { return uint64_t{1} << (2 * n - 1 - c); }
};

// Enumerates, for one pivot pattern, every RREF row set with pairwise
// vanishing symplectic products. Row j is forced to zero before its pivot and
// at every other pivot column; the remaining free bits must satisfy one
// linear condition per already-placed row.
class PatternEnumerator {
 public:
  PatternEnumerator(const PackedSymplectic& sym, const std::vector<int>& pivots,
                    std::vector<uint64_t>& out)
      : sym_(sym), pivots_(pivots), out_(out), rows_(pivots.size()) {
    uint64_t pivot_mask = 0;
    for (const int p : pivots_) pivot_mask |= sym_.column_unit(p);
    const int n = static_cast<int>(pivots_.size());
    free_cols_.resize(n);
    for (int j = 0; j < n; ++j) {
      for (int c = pivots_[j] + 1; c < 2 * sym_.n; ++c) {
        const uint64_t unit = sym_.column_unit(c);
        if (!(pivot_mask & unit)) free_cols_[j].push_back(unit);
      }
    }
  }

  void run() { place_row(0); }

 private:
  void place_row(int j) {
    const int n = static_cast<int>(pivots_.size());
    if (j == n) {
      out_.insert(out_.end(), rows_.begin(), rows_.end());
      return;
    }
    const uint64_t base = sym_.column_unit(pivots_[j]);
    const auto& free_cols = free_cols_[j];
    const int unknowns = static_cast<int>(free_cols.size());

    // One equation per earlier row: sum_t f_t [e_t, row_i] = [base, row_i].
    std::vector<uint64_t> eq_masks;
    std::vector<uint8_t> eq_rhs;
    for (int i = 0; i < j; ++i) {
      uint64_t mask = 0;
      for (int t = 0; t < unknowns; ++t) {
        if (sym_.product(free_cols[t], rows_[i])) mask |= uint64_t{1} << t;
      }
      eq_masks.push_back(mask);
      eq_rhs.push_back(static_cast<uint8_t>(sym_.product(base, rows_[i])));
    }

    // Gaussian elimination over the f bits.
    std::vector<int> pivot_of_eq;
    uint64_t used_unknowns = 0;
    for (size_t e = 0; e < eq_masks.size(); ++e) {
      for (size_t e2 = 0; e2 < e; ++e2) {
        if (pivot_of_eq[e2] >= 0 && (eq_masks[e] >> pivot_of_eq[e2]) & 1) {
          eq_masks[e] ^= eq_masks[e2];
          eq_rhs[e] ^= eq_rhs[e2];
        }
      }
      if (eq_masks[e] == 0) {
        if (eq_rhs[e]) return;  // inconsistent: no extension of this prefix
        pivot_of_eq.push_back(-1);
        continue;
      }
      const int pv = std::countr_zero(eq_masks[e]);
      pivot_of_eq.push_back(pv);
      used_unknowns |= uint64_t{1} << pv;
      for (size_t e2 = 0; e2 < e; ++e2) {
        if (pivot_of_eq[e2] >= 0 && (eq_masks[e2] >> pv) & 1) {
          eq_masks[e2] ^= eq_masks[e];
          eq_rhs[e2] ^= eq_rhs[e];
        }
      }
    }

    uint64_t particular = 0;  // free unknowns of the system stay zero
    for (size_t e = 0; e < eq_masks.size(); ++e) {
      if (pivot_of_eq[e] >= 0 && eq_rhs[e]) particular |= uint64_t{1} << pivot_of_eq[e];
    }
    std::vector<uint64_t> kernel;
    for (int t = 0; t < unknowns; ++t) {
      if ((used_unknowns >> t) & 1) continue;
      uint64_t vec = uint64_t{1} << t;
      for (size_t e = 0; e < eq_masks.size(); ++e) {
        if (pivot_of_eq[e] >= 0 && (eq_masks[e] >> t) & 1) {
          vec |= uint64_t{1} << pivot_of_eq[e];
        }
      }
      kernel.push_back(vec);
    }

    const uint64_t solution_count = uint64_t{1} << kernel.size();
    for (uint64_t s = 0; s < solution_count; ++s) {
      uint64_t f = particular;
      for (size_t b = 0; b < kernel.size(); ++b) {
        if ((s >> b) & 1) f ^= kernel[b];
      }
      uint64_t row = base;
      for (int t = 0; t < unknowns; ++t) {
        if ((f >> t) & 1) row |= free_cols[t];
      }
      rows_[j] = row;
      place_row(j + 1);
    }
  }

  const PackedSymplectic& sym_;
  const std::vector<int>& pivots_;
  std::vector<uint64_t>& out_;
  std::vector<uint64_t> rows_;
  std::vector<std::vector<uint64_t>> free_cols_;
};

int entry_rank(const uint64_t* words, int n) {
  int rank = 0;
  for (int j = 0; j < n; ++j) {
    if ((words[j] >> n) != 0) ++rank;
  }
  return rank;
}

bool entry_less(const uint64_t* a, int rank_a, const uint64_t* b, int rank_b, int n) {
  if (rank_a != rank_b) return rank_a < rank_b;
  return std::lexicographical_compare(a, a + n, b, b + n);
}

}  // namespace

LagrangianList enumerate_lagrangians(int n, const EnumerationOptions& options) {
  if (n < 1) throw ValidationError("qubit count must be at least 1");
  if (n > options.soft_max_n && !options.force) {
    throw ResourceGuard("enumeration beyond n = " + std::to_string(options.soft_max_n) +
                        " must be forced explicitly");
  }
  if (n > 32) throw ValidationError("qubit count must be between 1 and 32");

  const PackedSymplectic sym{n, (n == 64) ? ~uint64_t{0} : ((uint64_t{1} << n) - 1)};
  LagrangianList list;
  list.n = n;
  list.words.reserve(lagrangian_count_formula(n) * n);

  // Walk all n-element pivot patterns in [0, 2n).
  std::vector<int> pivots(n);
  std::iota(pivots.begin(), pivots.end(), 0);
  while (true) {
    PatternEnumerator(sym, pivots, list.words).run();
    int j = n - 1;
    while (j >= 0 && pivots[j] == 2 * n - (n - j)) --j;
    if (j < 0) break;
    ++pivots[j];
    for (int t = j + 1; t < n; ++t) pivots[t] = pivots[t - 1] + 1;
  }

  const uint64_t count = list.words.size() / n;
  std::vector<uint64_t> order(count);
  std::iota(order.begin(), order.end(), uint64_t{0});
  std::vector<int> ranks(count);
  for (uint64_t i = 0; i < count; ++i) ranks[i] = entry_rank(list.words.data() + i * n, n);
  std::sort(order.begin(), order.end(), [&](uint64_t a, uint64_t b) {
    return entry_less(list.words.data() + a * n, ranks[a], list.words.data() + b * n, ranks[b], n);
  });
  std::vector<uint64_t> sorted;
  sorted.reserve(list.words.size());
  for (const uint64_t i : order) {
    const uint64_t* e = list.words.data() + i * n;
    sorted.insert(sorted.end(), e, e + n);
  }
  list.words = std::move(sorted);
  return list;
}

uint64_t StateOrdering::state_index(uint64_t lagrangian_index, uint64_t lambda) const {
  if (lagrangian_index >= num_lagrangians() || lambda >= (uint64_t{1} << qubits())) {
    throw ValidationError("state index components out of range");
  }
  return (lagrangian_index << qubits()) | lambda;
}

std::pair<uint64_t, uint64_t> StateOrdering::state_of_index(uint64_t state_index) const {
  if (state_index >= num_states()) throw ValidationError("state index out of range");
  return {state_index >> qubits(), state_index & ((uint64_t{1} << qubits()) - 1)};
}

CheckMatrix StateOrdering::check_matrix(uint64_t state_index) const {
  const auto [lagr, lambda] = state_of_index(state_index);
  return CheckMatrix(list_->rows_of(lagr), BitVec::from_value(qubits(), lambda));
}

std::optional<uint64_t> StateOrdering::find_lagrangian(std::span<const uint64_t> entry_words) const {
  const int n = qubits();
  if (static_cast<int>(entry_words.size()) != n) {
    throw ValidationError("find_lagrangian: wrong entry size");
  }
  const int query_rank = entry_rank(entry_words.data(), n);
  uint64_t lo = 0;
  uint64_t hi = num_lagrangians();
  while (lo < hi) {
    const uint64_t mid = lo + (hi - lo) / 2;
    const uint64_t* e = list_->words.data() + mid * n;
    if (entry_less(e, list_->support_rank_of(mid), entry_words.data(), query_rank, n)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < num_lagrangians() &&
      std::equal(entry_words.begin(), entry_words.end(), list_->words.data() + lo * n)) {
    return lo;
  }
  return std::nullopt;
}

namespace {

constexpr char kCacheMagic[4] = {'S', 'T', 'L', 'G'};
constexpr uint8_t kCacheVersion = 1;

void write_u64_le(std::ostream& out, uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

uint64_t read_u64_le(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  if (!in) throw CorruptFile("cache file truncated");
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t{bytes[i]} << (8 * i);
  return v;
}

// On disk the X part sits in the low n bits and the Z part in the next n;
// in memory the halves are swapped so that integer order matches the
// lexicographic (q | p) column order.
uint64_t to_file_word(uint64_t w, int n, uint64_t low_mask) {
  return (w >> n) | ((w & low_mask) << n);
}

uint64_t from_file_word(uint64_t w, int n, uint64_t low_mask) {
  return to_file_word(w, n, low_mask);  // the swap is an involution
}

}  // namespace

void save_cache(const LagrangianList& list, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open cache file for writing: " + path.string());
  out.write(kCacheMagic, 4);
  out.put(static_cast<char>(kCacheVersion));
  out.put(static_cast<char>(list.n));
  write_u64_le(out, list.count());
  const uint64_t low_mask = (uint64_t{1} << list.n) - 1;
  for (const uint64_t w : list.words) {
    write_u64_le(out, to_file_word(w, list.n, low_mask));
  }
  if (!out) throw ValidationError("failed to write cache file: " + path.string());
}

LagrangianList load_cache(const std::filesystem::path& path, std::optional<int> expected_n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open cache file: " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || !std::equal(magic, magic + 4, kCacheMagic)) {
    throw CorruptFile("bad cache magic in " + path.string());
  }
  const int version = in.get();
  const int n = in.get();
  if (!in) throw CorruptFile("cache file truncated");
  if (version != kCacheVersion) {
    throw MismatchError("unsupported cache version " + std::to_string(version));
  }
  if (n < 1 || n > 32) throw CorruptFile("cache has invalid qubit count");
  if (expected_n && n != *expected_n) {
    throw MismatchError("cache holds n = " + std::to_string(n) + ", requested n = " +
                        std::to_string(*expected_n));
  }
  const uint64_t count = read_u64_le(in);
  LagrangianList list;
  list.n = n;
  list.words.reserve(count * n);
  const uint64_t low_mask = (uint64_t{1} << n) - 1;
  for (uint64_t i = 0; i < count * static_cast<uint64_t>(n); ++i) {
    list.words.push_back(from_file_word(read_u64_le(in), n, low_mask));
  }
  in.peek();
  if (!in.eof()) throw CorruptFile("cache file has trailing data");
  return list;
}

}  // namespace stabdep
