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

#include "stabdep/basis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "stabdep/parallel.hpp"

namespace stabdep {

std::complex<double> decode_entry(uint8_t code) {
  static const double inv_root2 = 1.0 / std::sqrt(2.0);
  switch (code) {
    case kEntryCodeOne: return {1.0, 0.0};
    case 0: return {-inv_root2, 0.0};
    case 1: return {0.0, -inv_root2};
    case 2: return {inv_root2, 0.0};
    case 3: return {0.0, inv_root2};
    default: throw ValidationError("invalid basis entry code");
  }
}

SplitContext::SplitContext(std::vector<SymplecticVector> parent_rows)
    : n_(static_cast<int>(parent_rows.size())), parent_rows_(std::move(parent_rows)) {
  int rank = 0;
  for (const SymplecticVector& r : parent_rows_) {
    if (r.q.any()) ++rank;
  }
  parent_rank_ = rank;
  if (parent_rank_ == 0) {
    throw ComputationalState("computational basis states cannot be split");
  }

  {
    std::vector<BitVec> q_basis;
    q_basis.reserve(parent_rank_);
    for (int j = 0; j < parent_rank_; ++j) q_basis.push_back(parent_rows_[j].q);
    parent_q_solver_ = SpanSolver(q_basis, n_);
  }

  // Replace the first generator by a Z on the pivot qubit of its X part.
  // That pivot column is zero in every other row, so the new row commutes
  // with the rest and the child support rank drops by exactly one.
  const int pivot_qubit = parent_rows_[0].q.leading_index();
  std::vector<SymplecticVector> new_rows = parent_rows_;
  new_rows[0] = SymplecticVector(BitVec::unit(n_, pivot_qubit), BitVec(n_));

  BitMatrix packed(2 * n_);
  for (const SymplecticVector& r : new_rows) packed.append_row(r.to_row());
  RrefResult reduced = rref(packed);

  // Replay the row operations on the generators, tracking the exact sign a
  // product of two commuting Paulis picks up relative to the canonical
  // representative of the summed row.
  std::vector<SymplecticVector> rows = std::move(new_rows);
  lambda_ops_.reserve(reduced.ops.size());
  for (const RowOp& op : reduced.ops) {
    if (op.kind == RowOp::Kind::kSwap) {
      std::swap(rows[op.target], rows[op.source]);
      lambda_ops_.push_back({op.kind, op.target, op.source, 0});
    } else {
      const PhasedPauli product = pauli_multiply(PhasedPauli::canonical(rows[op.target]),
                                                 PhasedPauli::canonical(rows[op.source]));
      if (product.phase.k != 0 && product.phase.k != 2) {
        throw Error("split: generators do not commute");
      }
      rows[op.target] = product.vec;
      lambda_ops_.push_back({op.kind, op.target, op.source,
                             static_cast<uint8_t>(product.phase.k == 2 ? 1 : 0)});
    }
  }
  for (int j = 0; j < n_; ++j) {
    if (!(rows[j].to_row() == reduced.matrix.row(j))) {
      throw Error("split: generator replay diverged from row reduction");
    }
  }
  child_rows_ = std::move(rows);

  int child_rank = 0;
  for (const SymplecticVector& r : child_rows_) {
    if (r.q.any()) ++child_rank;
  }
  if (child_rank != parent_rank_ - 1) {
    throw Error("split: child support rank is not parent rank minus one");
  }
  for (int j = 0; j < child_rank; ++j) child_support_basis_.push_back(child_rows_[j].q);

  std::vector<BitVec> constraint_rows;
  for (int j = child_rank; j < n_; ++j) constraint_rows.push_back(child_rows_[j].p);
  child_offset_system_ = AffineSystem(constraint_rows, n_);
}

std::vector<uint64_t> SplitContext::child_packed_words() const {
  std::vector<uint64_t> words;
  words.reserve(n_);
  for (const SymplecticVector& r : child_rows_) words.push_back(r.to_row().value());
  return words;
}

Z4Phase SplitContext::parent_phase_between(const BitVec& l1, const BitVec& l2,
                                           const BitVec& parent_lambdas) const {
  const BitVec coeffs = parent_q_solver_.solve(l1 ^ l2);
  PhasedPauli g = PhasedPauli::identity(n_);
  int sign_flips = 0;
  for (int j = 0; j < parent_rank_; ++j) {
    if (coeffs.get(j)) {
      g = pauli_multiply(g, PhasedPauli::canonical(parent_rows_[j]));
      if (parent_lambdas.get(j)) ++sign_flips;
    }
  }
  g.phase += Z4Phase(2 * sign_flips);
  const BasisAction action = apply_to_basis_state(g, l1);
  if (!(action.out == l2)) throw Error("split: parent transport missed its target");
  return action.phase;
}

SplitResult SplitContext::split_for(const BitVec& parent_lambdas) const {
  if (parent_lambdas.size() != n_) throw ValidationError("split: lambda tuple has wrong length");

  // The two children keep the parent signs on rows 2..n and take eigenvalue
  // +1 / -1 on the inserted Z generator; then both tuples ride through the
  // recorded row reduction.
  std::array<std::vector<uint8_t>, 2> lam;
  for (int child = 0; child < 2; ++child) {
    lam[child].resize(n_);
    lam[child][0] = static_cast<uint8_t>(child);
    for (int j = 1; j < n_; ++j) lam[child][j] = parent_lambdas.get(j) ? 1 : 0;
  }
  for (const LambdaOp& op : lambda_ops_) {
    for (auto& bits : lam) {
      if (op.kind == RowOp::Kind::kSwap) {
        std::swap(bits[op.target], bits[op.source]);
      } else {
        bits[op.target] = bits[op.target] ^ bits[op.source] ^ op.flip;
      }
    }
  }

  const int child_rank = parent_rank_ - 1;
  std::array<BitVec, 2> lambdas = {BitVec(n_), BitVec(n_)};
  std::array<BitVec, 2> anchors = {BitVec(n_), BitVec(n_)};
  for (int child = 0; child < 2; ++child) {
    for (int j = 0; j < n_; ++j) lambdas[child].set(j, lam[child][j] != 0);
    BitVec mu(n_ - child_rank);
    for (int j = child_rank; j < n_; ++j) mu.set(j - child_rank, lam[child][j] != 0);
    BitVec anchor = child_offset_system_.solve(mu);
    for (const BitVec& b : child_support_basis_) {
      const int pivot = b.leading_index();
      if (pivot != -1 && anchor.get(pivot)) anchor ^= b;
    }
    anchors[child] = anchor;
  }

  SplitResult result;
  result.child_rows = child_rows_;
  const int first = anchors[0] < anchors[1] ? 0 : 1;
  result.child_lambdas = {lambdas[first], lambdas[1 - first]};
  result.anchors = {anchors[first], anchors[1 - first]};
  result.taus = {Z4Phase(0),
                 parent_phase_between(result.anchors[0], result.anchors[1], parent_lambdas)};
  return result;
}

SplitResult split(const CheckMatrix& cm) {
  if (support_rank(cm) == 0) {
    throw ComputationalState("computational basis states cannot be split");
  }
  std::vector<SymplecticVector> rows = cm.rows;
  return SplitContext(std::move(rows)).split_for(cm.lambdas);
}

namespace {

// The 2^n columns contributed by one noncomputational Lagrangian, written
// into caller-owned slots (entries sorted by row, diagonal last).
void emit_lagrangian_columns(const StateOrdering& ordering, uint64_t li, uint64_t* rows_out,
                             uint8_t* codes_out) {
  const int n = ordering.qubits();
  const SplitContext ctx(ordering.list().rows_of(li));
  const auto child_lagr = ordering.find_lagrangian(ctx.child_packed_words());
  if (!child_lagr) throw Error("split produced an unknown Lagrangian subspace");
  const uint64_t lambda_count = uint64_t{1} << n;
  for (uint64_t lambda = 0; lambda < lambda_count; ++lambda) {
    const SplitResult s = ctx.split_for(BitVec::from_value(n, lambda));
    const uint64_t diag_row = (li << n) | lambda;
    uint64_t child_row[2];
    uint8_t child_code[2];
    for (int c = 0; c < 2; ++c) {
      child_row[c] = ordering.state_index(*child_lagr, s.child_lambdas[c].value());
      child_code[c] = s.taus[c].k;
    }
    if (child_row[0] > child_row[1]) {
      std::swap(child_row[0], child_row[1]);
      std::swap(child_code[0], child_code[1]);
    }
    rows_out[3 * lambda] = child_row[0];
    codes_out[3 * lambda] = child_code[0];
    rows_out[3 * lambda + 1] = child_row[1];
    codes_out[3 * lambda + 1] = child_code[1];
    rows_out[3 * lambda + 2] = diag_row;
    codes_out[3 * lambda + 2] = kEntryCodeOne;
  }
}

}  // namespace

TripleBasis build_basis(const StateOrdering& ordering, const BuildOptions& options) {
  const int n = ordering.qubits();
  const uint64_t num_states = ordering.num_states();
  const uint64_t num_cols = ordering.num_noncomputational();
  const uint64_t estimate = num_cols * 3 * (sizeof(uint64_t) + sizeof(uint8_t));
  if (estimate > options.max_mem_bytes && !options.force) {
    throw ResourceGuard("basis of " + std::to_string(num_cols) + " columns needs about " +
                        std::to_string(estimate >> 20) + " MiB; raise the memory limit or force");
  }

  TripleBasis basis;
  basis.n = n;
  basis.num_rows = num_states;
  basis.num_cols = num_cols;
  basis.rows.resize(num_cols * 3);
  basis.codes.resize(num_cols * 3);

  const uint64_t num_lagr = ordering.num_lagrangians();

  // Columns are grouped by Lagrangian; each worker owns a disjoint block of
  // columns, so writes never race and the result is deterministic.
  parallel_for(num_lagr - 1, options.threads, [&](uint64_t begin, uint64_t end) {
    for (uint64_t li = 1 + begin; li < 1 + end; ++li) {
      const uint64_t first_col = (li - 1) << n;
      emit_lagrangian_columns(ordering, li, basis.rows.data() + 3 * first_col,
                              basis.codes.data() + 3 * first_col);
    }
  });
  return basis;
}

CanonicalDependency canonical_dependency(const StateOrdering& ordering, uint64_t state_index) {
  const uint64_t computational = uint64_t{1} << ordering.qubits();
  if (state_index < computational || state_index >= ordering.num_states()) {
    throw ValidationError("canonical dependencies exist only for noncomputational states");
  }
  const ExactAmplitudeTable table = amplitudes(ordering.check_matrix(state_index));
  const double mag = std::pow(2.0, -0.5 * table.magnitude_exponent);
  CanonicalDependency dep;
  dep.state = state_index;
  for (const auto& [z, phase] : table.entries) {
    dep.entries.emplace_back(z, -phase.to_complex() * mag);
  }
  dep.entries.emplace_back(state_index, std::complex<double>{1.0, 0.0});
  return dep;
}

TriangularSolveResult triangular_solve(const TripleBasis& basis, const SparseVector& gamma) {
  std::vector<std::complex<double>> r(basis.num_rows, {0.0, 0.0});
  for (const auto& [idx, value] : gamma) {
    if (idx >= basis.num_rows) throw ValidationError("triangular_solve: index out of range");
    r[idx] += value;
  }
  const uint64_t first_diag = uint64_t{1} << basis.n;
  TriangularSolveResult result;
  for (uint64_t j = basis.num_cols; j-- > 0;) {
    const std::complex<double> xj = r[first_diag + j];
    if (xj == std::complex<double>{0.0, 0.0}) continue;
    result.x.emplace_back(j, xj);
    r[first_diag + j] = 0.0;
    for (int slot = 0; slot < 2; ++slot) {
      r[basis.rows[3 * j + slot]] -= decode_entry(basis.codes[3 * j + slot]) * xj;
    }
  }
  std::reverse(result.x.begin(), result.x.end());
  double norm_sq = 0.0;
  for (const auto& value : r) norm_sq += std::norm(value);
  result.residual = std::sqrt(norm_sq);
  return result;
}

namespace {

constexpr char kBasisMagic[4] = {'S', 'T', 'B', 'B'};
constexpr uint8_t kBasisVersion = 1;

void write_u64_le(std::ostream& out, uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

uint64_t read_u64_le(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  if (!in) throw CorruptFile("basis file truncated");
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t{bytes[i]} << (8 * i);
  return v;
}

}  // namespace

void export_basis(const TripleBasis& basis, const std::filesystem::path& path, BasisFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open basis file for writing: " + path.string());
  if (format == BasisFormat::kBinary) {
    out.write(kBasisMagic, 4);
    out.put(static_cast<char>(kBasisVersion));
    out.put(static_cast<char>(basis.n));
    write_u64_le(out, basis.num_rows);
    write_u64_le(out, basis.num_cols);
    for (uint64_t i = 0; i < basis.nnz(); ++i) {
      write_u64_le(out, basis.rows[i]);
      out.put(static_cast<char>(basis.codes[i]));
    }
  } else {
    out << "col,row,code\n";
    for (uint64_t j = 0; j < basis.num_cols; ++j) {
      for (int slot = 0; slot < 3; ++slot) {
        out << j << ',' << basis.rows[3 * j + slot] << ','
            << static_cast<unsigned>(basis.codes[3 * j + slot]) << '\n';
      }
    }
  }
  if (!out) throw ValidationError("failed to write basis file: " + path.string());
}

void write_basis_file(const StateOrdering& ordering, const BuildOptions& options,
                      const std::filesystem::path& path, BasisFormat format) {
  const int n = ordering.qubits();
  const uint64_t num_lagr = ordering.num_lagrangians();
  const uint64_t lambda_count = uint64_t{1} << n;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open basis file for writing: " + path.string());
  if (format == BasisFormat::kBinary) {
    out.write(kBasisMagic, 4);
    out.put(static_cast<char>(kBasisVersion));
    out.put(static_cast<char>(n));
    write_u64_le(out, ordering.num_states());
    write_u64_le(out, ordering.num_noncomputational());
  } else {
    out << "col,row,code\n";
  }

  constexpr uint64_t kChunkLagrangians = 1024;
  std::vector<uint64_t> rows(3 * lambda_count * kChunkLagrangians);
  std::vector<uint8_t> codes(3 * lambda_count * kChunkLagrangians);
  std::string bytes;
  for (uint64_t base = 1; base < num_lagr; base += kChunkLagrangians) {
    const uint64_t count = std::min(kChunkLagrangians, num_lagr - base);
    parallel_for(count, options.threads, [&](uint64_t begin, uint64_t end) {
      for (uint64_t k = begin; k < end; ++k) {
        emit_lagrangian_columns(ordering, base + k, rows.data() + 3 * lambda_count * k,
                                codes.data() + 3 * lambda_count * k);
      }
    });
    bytes.clear();
    if (format == BasisFormat::kBinary) {
      bytes.reserve(count * lambda_count * 3 * 9);
      for (uint64_t e = 0; e < count * lambda_count * 3; ++e) {
        for (int b = 0; b < 8; ++b) bytes.push_back(static_cast<char>((rows[e] >> (8 * b)) & 0xff));
        bytes.push_back(static_cast<char>(codes[e]));
      }
    } else {
      std::ostringstream chunk;
      for (uint64_t k = 0; k < count; ++k) {
        for (uint64_t lambda = 0; lambda < lambda_count; ++lambda) {
          const uint64_t col = ((base + k - 1) << n) | lambda;
          const uint64_t e = 3 * (lambda_count * k + lambda);
          for (int slot = 0; slot < 3; ++slot) {
            chunk << col << ',' << rows[e + slot] << ','
                  << static_cast<unsigned>(codes[e + slot]) << '\n';
          }
        }
      }
      bytes = chunk.str();
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  if (!out) throw ValidationError("failed to write basis file: " + path.string());
}

TripleBasis import_basis(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open basis file: " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || !std::equal(magic, magic + 4, kBasisMagic)) {
    throw CorruptFile("bad basis magic in " + path.string());
  }
  const int version = in.get();
  const int n = in.get();
  if (!in) throw CorruptFile("basis file truncated");
  if (version != kBasisVersion) {
    throw MismatchError("unsupported basis version " + std::to_string(version));
  }
  if (n < 1 || n > 32) throw CorruptFile("basis file has invalid qubit count");
  TripleBasis basis;
  basis.n = n;
  basis.num_rows = read_u64_le(in);
  basis.num_cols = read_u64_le(in);
  basis.rows.reserve(basis.num_cols * 3);
  basis.codes.reserve(basis.num_cols * 3);
  for (uint64_t i = 0; i < basis.num_cols * 3; ++i) {
    basis.rows.push_back(read_u64_le(in));
    const int code = in.get();
    if (code == EOF) throw CorruptFile("basis file truncated");
    basis.codes.push_back(static_cast<uint8_t>(code));
  }
  in.peek();
  if (!in.eof()) throw CorruptFile("basis file has trailing data");
  return basis;
}

}  // namespace stabdep
