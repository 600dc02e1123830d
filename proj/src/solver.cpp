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

#include "stabdep/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>

#include "stabdep/parallel.hpp"

namespace stabdep {

namespace {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

constexpr int kCheckPeriod = 5;
constexpr size_t kPolishMaxSupport = 2048;
constexpr double kPolishFeasTol = 1e-10;
constexpr double kPruneTol = 1e-12;
// Below these sizes threads cost more than they save.
constexpr uint64_t kThreadGrain = uint64_t{1} << 18;
constexpr uint64_t kOpGrain = uint64_t{1} << 15;

double cabs(Complex v) { return std::sqrt(std::norm(v)); }

Complex shrink(Complex v, double kappa) {
  const double mag = cabs(v);
  if (mag <= kappa) return {0.0, 0.0};
  return v * ((mag - kappa) / mag);
}

// In-place Cholesky of a Hermitian positive definite row-major d x d matrix;
// false when a pivot is not positive.
bool cholesky(CVec& a, size_t d) {
  for (size_t j = 0; j < d; ++j) {
    double diag = a[j * d + j].real();
    for (size_t k = 0; k < j; ++k) diag -= std::norm(a[j * d + k]);
    if (!(diag > 0.0) || !std::isfinite(diag)) return false;
    const double root = std::sqrt(diag);
    a[j * d + j] = root;
    for (size_t i = j + 1; i < d; ++i) {
      Complex v = a[i * d + j];
      for (size_t k = 0; k < j; ++k) v -= a[i * d + k] * std::conj(a[j * d + k]);
      a[i * d + j] = v / root;
    }
  }
  return true;
}

void cholesky_solve(const CVec& chol, size_t d, CVec& b) {
  for (size_t i = 0; i < d; ++i) {
    Complex v = b[i];
    for (size_t k = 0; k < i; ++k) v -= chol[i * d + k] * b[k];
    b[i] = v / chol[i * d + i].real();
  }
  for (size_t i = d; i-- > 0;) {
    Complex v = b[i];
    for (size_t k = i + 1; k < d; ++k) v -= std::conj(chol[k * d + i]) * b[k];
    b[i] = v / chol[i * d + i].real();
  }
}

/// The basis as a structured operator. Keeps a row-major copy for the
/// computational block and level schedules for the triangular block solves:
/// every off-diagonal entry connects a column to rows of strictly smaller
/// support rank, so columns of equal rank are independent and each stratum
/// runs in parallel.
class SparseOperator {
 public:
  SparseOperator(const TripleBasis& basis, int threads)
      : b_(basis),
        m_(basis.num_rows),
        cols_(basis.num_cols),
        first_diag_(uint64_t{1} << basis.n),
        threads_(threads) {
    if (cols_ > 0xffffffffull) throw ResourceGuard("basis too large for the solver index type");
    for (int code = 0; code < 256; ++code) decode_[code] = {0.0, 0.0};
    for (const uint8_t code : {uint8_t{0}, uint8_t{1}, uint8_t{2}, uint8_t{3}, kEntryCodeOne}) {
      decode_[code] = decode_entry(code);
    }

    row_ptr_.assign(m_ + 1, 0);
    for (const uint64_t row : b_.rows) ++row_ptr_[row + 1];
    for (uint64_t i = 0; i < m_; ++i) row_ptr_[i + 1] += row_ptr_[i];
    csr_col_.resize(b_.nnz());
    csr_code_.resize(b_.nnz());
    std::vector<uint64_t> cursor(row_ptr_.begin(), row_ptr_.end() - 1);
    for (uint64_t j = 0; j < cols_; ++j) {
      for (int slot = 0; slot < 3; ++slot) {
        const uint64_t row = b_.rows[3 * j + slot];
        const uint64_t at = cursor[row]++;
        csr_col_[at] = static_cast<uint32_t>(j);
        csr_code_[at] = b_.codes[3 * j + slot];
      }
    }

    // Column level = support rank of its state, recovered from the structure
    // alone as one plus the deepest noncomputational child level.
    std::vector<uint32_t> level(cols_);
    uint32_t max_level = 0;
    for (uint64_t j = 0; j < cols_; ++j) {
      uint32_t lv = 1;
      for (int slot = 0; slot < 2; ++slot) {
        const uint64_t row = b_.rows[3 * j + slot];
        if (row >= first_diag_) lv = std::max(lv, level[row - first_diag_] + 1);
      }
      level[j] = lv;
      if (lv < max_level) throw Error("basis columns are not ordered by support rank");
      max_level = lv;
    }
    level_starts_.push_back(0);
    for (uint64_t j = 1; j < cols_; ++j) {
      if (level[j] != level[j - 1]) level_starts_.push_back(j);
    }
    level_starts_.push_back(cols_);
  }

  uint64_t rows() const { return m_; }
  uint64_t cols() const { return cols_; }
  uint64_t first_diag() const { return first_diag_; }

  // out[z] = (B_C x)[z] over the computational rows z < 2^n.
  void apply_computational(const CVec& x, CVec& out) const {
    for (uint64_t z = 0; z < first_diag_; ++z) {
      Complex acc{0.0, 0.0};
      for (uint64_t e = row_ptr_[z]; e < row_ptr_[z + 1]; ++e) {
        acc += decode_[csr_code_[e]] * x[csr_col_[e]];
      }
      out[z] = acc;
    }
  }

  // out[j] = (B_C^H y)[j]; only entries on computational rows contribute.
  void apply_computational_adjoint(const CVec& y, CVec& out) const {
    const int t = cols_ >= kOpGrain ? threads_ : 1;
    parallel_for(cols_, t, [&](uint64_t begin, uint64_t end) {
      for (uint64_t j = begin; j < end; ++j) {
        Complex acc{0.0, 0.0};
        for (int slot = 0; slot < 2; ++slot) {
          const uint64_t row = b_.rows[3 * j + slot];
          if (row < first_diag_) acc += std::conj(decode_[b_.codes[3 * j + slot]]) * y[row];
        }
        out[j] = acc;
      }
    });
  }

  // b <- inverse of the noncomputational block applied to b.
  void solve_block(CVec& b) const {
    for (size_t lv = level_starts_.size() - 1; lv-- > 0;) {
      const uint64_t lo = level_starts_[lv];
      const uint64_t hi = level_starts_[lv + 1];
      const int t = hi - lo >= kOpGrain ? threads_ : 1;
      parallel_for(hi - lo, t, [&](uint64_t begin, uint64_t end) {
        for (uint64_t i = lo + begin; i < lo + end; ++i) {
          Complex acc = b[i];
          const uint64_t row = first_diag_ + i;
          for (uint64_t e = row_ptr_[row]; e < row_ptr_[row + 1]; ++e) {
            const uint32_t col = csr_col_[e];
            if (col != i) acc -= decode_[csr_code_[e]] * b[col];
          }
          b[i] = acc;
        }
      });
    }
  }

  // b <- inverse adjoint of the noncomputational block applied to b.
  void solve_block_adjoint(CVec& b) const {
    for (size_t lv = 0; lv + 1 < level_starts_.size(); ++lv) {
      const uint64_t lo = level_starts_[lv];
      const uint64_t hi = level_starts_[lv + 1];
      const int t = hi - lo >= kOpGrain ? threads_ : 1;
      parallel_for(hi - lo, t, [&](uint64_t begin, uint64_t end) {
        for (uint64_t j = lo + begin; j < lo + end; ++j) {
          Complex acc = b[j];
          for (int slot = 0; slot < 2; ++slot) {
            const uint64_t row = b_.rows[3 * j + slot];
            if (row >= first_diag_) {
              acc -= std::conj(decode_[b_.codes[3 * j + slot]]) * b[row - first_diag_];
            }
          }
          b[j] = acc;
        }
      });
    }
  }

  // Entries of CSR row z as (column, value), z < 2^n.
  void computational_row(uint64_t z, CVec& out) const {
    std::fill(out.begin(), out.end(), Complex{0.0, 0.0});
    for (uint64_t e = row_ptr_[z]; e < row_ptr_[z + 1]; ++e) {
      out[csr_col_[e]] = decode_[csr_code_[e]];
    }
  }

 private:
  const TripleBasis& b_;
  uint64_t m_;
  uint64_t cols_;
  uint64_t first_diag_;
  int threads_;
  std::vector<uint64_t> row_ptr_;
  std::vector<uint32_t> csr_col_;
  std::vector<uint8_t> csr_code_;
  std::vector<uint64_t> level_starts_;
  std::array<Complex, 256> decode_;
};

struct PolishOutcome {
  bool ok = false;
  double l1 = 0.0;
  SparseVector coefficients;
};

/// Re-solves the target exactly on a candidate support by dense least
/// squares. Any exact solution is a feasible decomposition, so the returned
/// value can never undershoot the true optimum.
PolishOutcome polish_support(const std::vector<uint64_t>& support,
                             const std::function<void(uint64_t, CVec&)>& load_column,
                             const CVec& psi) {
  PolishOutcome out;
  const size_t s = support.size();
  if (s == 0 || s > kPolishMaxSupport) return out;
  const size_t d = psi.size();
  CVec columns(d * s);
  CVec col(d);
  for (size_t j = 0; j < s; ++j) {
    load_column(support[j], col);
    for (size_t r = 0; r < d; ++r) columns[r * s + j] = col[r];
  }
  CVec gram(s * s, {0.0, 0.0});
  CVec rhs(s, {0.0, 0.0});
  for (size_t r = 0; r < d; ++r) {
    const Complex* row = columns.data() + r * s;
    for (size_t i = 0; i < s; ++i) {
      const Complex ci = std::conj(row[i]);
      rhs[i] += ci * psi[r];
      for (size_t j = 0; j <= i; ++j) gram[i * s + j] += ci * row[j];
    }
  }
  for (size_t i = 0; i < s; ++i) {
    for (size_t j = i + 1; j < s; ++j) gram[i * s + j] = std::conj(gram[j * s + i]);
  }
  if (!cholesky(gram, s)) return out;
  cholesky_solve(gram, s, rhs);
  double feas_sq = 0.0;
  for (size_t r = 0; r < d; ++r) {
    Complex acc = -psi[r];
    const Complex* row = columns.data() + r * s;
    for (size_t j = 0; j < s; ++j) acc += row[j] * rhs[j];
    feas_sq += std::norm(acc);
  }
  if (std::sqrt(feas_sq) > kPolishFeasTol) return out;
  out.ok = true;
  for (size_t j = 0; j < s; ++j) {
    if (std::abs(rhs[j]) > kPruneTol) {
      out.coefficients.emplace_back(support[j], rhs[j]);
      out.l1 += std::abs(rhs[j]);
    }
  }
  std::sort(out.coefficients.begin(), out.coefficients.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.first < b.first; });
  return out;
}

struct PassTotals {
  double obj = 0.0;    // feasible objective || y ||_1 = || c + B x ||_1
  double rp_sq = 0.0;  // || y - z ||^2
  double dz_sq = 0.0;  // || z_new - z_hat ||^2
  double du_sq = 0.0;  // || u_new - u_hat ||^2
  double z_sq = 0.0;
  double y_sq = 0.0;
  double u_sq = 0.0;
};

}  // namespace

Decomposition computational_decomposition(const StateVector& psi, const StateOrdering& ordering) {
  const int n = qubit_count_of(psi);
  if (n != ordering.qubits()) {
    throw ValidationError("state and ordering disagree on the qubit count");
  }
  if (std::abs(l2_norm(psi) - 1.0) > 1e-12) {
    throw ValidationError("state is not normalised; pass --normalize to rescale");
  }
  Decomposition d;
  d.n = n;
  for (uint64_t z = 0; z < psi.size(); ++z) {
    if (psi[z] != Complex{0.0, 0.0}) d.coefficients.emplace_back(z, psi[z]);
  }
  return d;
}

StateVector evaluate_decomposition(const Decomposition& d, const StateOrdering& ordering) {
  if (d.n != ordering.qubits()) {
    throw ValidationError("decomposition and ordering disagree on the qubit count");
  }
  if (d.n > 12) throw ResourceGuard("evaluate_decomposition is gated to n <= 12");
  StateVector out(uint64_t{1} << d.n, {0.0, 0.0});
  const uint64_t computational = uint64_t{1} << d.n;
  for (const auto& [idx, coeff] : d.coefficients) {
    if (idx >= ordering.num_states()) throw ValidationError("decomposition index out of range");
    if (idx < computational) {
      out[idx] += coeff;
      continue;
    }
    const ExactAmplitudeTable table = amplitudes(ordering.check_matrix(idx));
    const double mag = std::pow(2.0, -0.5 * table.magnitude_exponent);
    for (const auto& [z, phase] : table.entries) {
      out[z] += coeff * phase.to_complex() * mag;
    }
  }
  return out;
}

std::optional<std::pair<int64_t, int64_t>> rational_hint(double value) {
  if (!std::isfinite(value)) return std::nullopt;
  for (int64_t q = 1; q <= 64; ++q) {
    const double scaled = value * static_cast<double>(q);
    if (std::abs(scaled) > 9e15) break;
    const int64_t p = std::llround(scaled);
    if (std::abs(value - static_cast<double>(p) / static_cast<double>(q)) < 1e-6) {
      const int64_t g = std::gcd(std::abs(p), q);
      if (g == 0) return std::make_pair(int64_t{0}, int64_t{1});
      return std::make_pair(p / g, q / g);
    }
  }
  return std::nullopt;
}

ExtentResult minimize_l1_affine(const Decomposition& c, const TripleBasis& basis,
                                const SolverParams& params, const StateOrdering* ordering) {
  const auto t_start = std::chrono::steady_clock::now();
  if (c.n != basis.n) throw ValidationError("decomposition and basis disagree on the qubit count");
  if (params.rho <= 0 || params.eps_abs <= 0 || params.eps_rel <= 0 ||
      params.over_relaxation < 1.0 || params.over_relaxation > 1.8) {
    throw ValidationError("invalid solver parameters");
  }
  const int threads = basis.num_rows >= kThreadGrain ? params.threads : 1;
  const SparseOperator op(basis, threads);
  const uint64_t m = op.rows();
  const uint64_t ncols = op.cols();
  const uint64_t fd = op.first_diag();

  // The offset vector is typically supported on the computational prefix, so
  // it is stored densely only up to its largest index.
  uint64_t prefix = 0;
  for (const auto& [idx, value] : c.coefficients) {
    if (idx >= m) throw ValidationError("decomposition index out of range");
    prefix = std::max(prefix, idx + 1);
  }
  CVec c_prefix(prefix, Complex{0.0, 0.0});
  for (const auto& [idx, value] : c.coefficients) c_prefix[idx] += value;
  const auto c_at = [&](uint64_t i) -> Complex {
    return i < c_prefix.size() ? c_prefix[i] : Complex{0.0, 0.0};
  };

  // Decompositions of the target form the affine set c + range(B). Since the
  // noncomputational block of B is invertible, the orthogonal complement of
  // range(B) is spanned by the 2^n columns of W = [I; -B_N^{-H} B_C^H], and
  // projecting onto the set costs two triangular solves plus one small dense
  // solve against H = W^H W = I + B_C B_N^{-1} B_N^{-H} B_C^H.
  CVec gram_h(fd * fd, {0.0, 0.0});
  {
    CVec work(ncols);
    CVec hcol(fd);
    for (uint64_t z = 0; z < fd; ++z) {
      op.computational_row(z, work);
      for (auto& v : work) v = std::conj(v);
      op.solve_block_adjoint(work);
      op.solve_block(work);
      op.apply_computational(work, hcol);
      for (uint64_t r = 0; r < fd; ++r) gram_h[r * fd + z] = hcol[r];
      gram_h[z * fd + z] += 1.0;
    }
    if (!cholesky(gram_h, fd)) throw Error("projection Gram matrix is not positive definite");
  }

  CVec y(m, {0.0, 0.0});
  CVec z(m, {0.0, 0.0});
  CVec u(m, {0.0, 0.0});
  CVec tn(ncols);
  CVec small_a(fd);

  // Projection of w (stored in y) onto c + range(B), in place.
  const auto project_affine = [&]() {
    parallel_for(ncols, threads, [&](uint64_t begin, uint64_t end) {
      for (uint64_t j = begin; j < end; ++j) tn[j] = y[fd + j] - c_at(fd + j);
    });
    op.solve_block(tn);
    op.apply_computational(tn, small_a);
    for (uint64_t zidx = 0; zidx < fd; ++zidx) {
      small_a[zidx] = (y[zidx] - c_at(zidx)) - small_a[zidx];
    }
    cholesky_solve(gram_h, fd, small_a);
    op.apply_computational_adjoint(small_a, tn);
    op.solve_block_adjoint(tn);
    for (uint64_t zidx = 0; zidx < fd; ++zidx) y[zidx] -= small_a[zidx];
    parallel_for(ncols, threads, [&](uint64_t begin, uint64_t end) {
      for (uint64_t j = begin; j < end; ++j) y[fd + j] += tn[j];
    });
  };

  for (uint64_t i = 0; i < prefix; ++i) {
    y[i] = c_prefix[i];
    z[i] = c_prefix[i];
  }

  const double rho = params.rho;
  const double kappa = 1.0 / rho;
  const double alpha = params.over_relaxation;

  ExtentResult result;
  double min_obj_seen = std::numeric_limits<double>::infinity();
  std::mutex totals_mutex;

  uint64_t it = 0;
  for (it = 1; it <= params.max_iter; ++it) {
    parallel_for(m, threads, [&](uint64_t begin, uint64_t end) {
      for (uint64_t i = begin; i < end; ++i) y[i] = z[i] - u[i];
    });
    project_affine();

    PassTotals totals;
    parallel_for(m, threads, [&](uint64_t begin, uint64_t end) {
      PassTotals local;
      for (uint64_t i = begin; i < end; ++i) {
        const Complex yh = alpha * y[i] + (1.0 - alpha) * z[i];
        const Complex w = yh + u[i];
        const Complex zn = shrink(w, kappa);
        local.dz_sq += std::norm(zn - z[i]);
        u[i] = w - zn;
        local.obj += cabs(y[i]);
        local.rp_sq += std::norm(y[i] - zn);
        local.z_sq += std::norm(zn);
        local.y_sq += std::norm(y[i]);
        local.u_sq += std::norm(u[i]);
        z[i] = zn;
      }
      const std::lock_guard<std::mutex> lock(totals_mutex);
      totals.obj += local.obj;
      totals.rp_sq += local.rp_sq;
      totals.dz_sq += local.dz_sq;
      totals.z_sq += local.z_sq;
      totals.y_sq += local.y_sq;
      totals.u_sq += local.u_sq;
    });

    result.l1 = totals.obj;
    result.primal_residual = std::sqrt(totals.rp_sq);
    result.dual_residual = rho * std::sqrt(totals.dz_sq);
    if (it > 100) {
      result.objective_backslide =
          std::max(result.objective_backslide, totals.obj - min_obj_seen);
    }
    min_obj_seen = std::min(min_obj_seen, totals.obj);

    if (it % kCheckPeriod == 0 || it == params.max_iter) {
      const double eps_pri =
          std::sqrt(static_cast<double>(m)) * params.eps_abs +
          params.eps_rel * std::max(std::sqrt(totals.y_sq), std::sqrt(totals.z_sq));
      const double eps_dual = std::sqrt(static_cast<double>(m)) * params.eps_abs +
                              params.eps_rel * rho * std::sqrt(totals.u_sq);
      if (result.primal_residual <= eps_pri && result.dual_residual <= eps_dual) {
        result.converged = true;
        break;
      }
    }
  }
  result.iterations = std::min(it, params.max_iter);

  // y is feasible by construction; its entries are the decomposition.
  SparseVector raw;
  for (uint64_t i = 0; i < m; ++i) {
    if (cabs(y[i]) > kPruneTol) raw.emplace_back(i, y[i]);
  }
  result.decomposition.n = c.n;
  result.decomposition.coefficients = std::move(raw);

  if (ordering != nullptr && c.n <= 12) {
    const StateVector psi = evaluate_decomposition(c, *ordering);
    double z_max = 0.0;
    for (const Complex& v : z) z_max = std::max(z_max, cabs(v));
    std::vector<uint64_t> support;
    const double threshold = std::max(1e-7, 1e-6 * z_max);
    for (uint64_t i = 0; i < m; ++i) {
      if (cabs(z[i]) > threshold) support.push_back(i);
    }
    const uint64_t computational = uint64_t{1} << c.n;
    const auto load_column = [&](uint64_t idx, CVec& col) {
      std::fill(col.begin(), col.end(), Complex{0.0, 0.0});
      if (idx < computational) {
        col[idx] = 1.0;
        return;
      }
      const ExactAmplitudeTable table = amplitudes(ordering->check_matrix(idx));
      const double mag = std::pow(2.0, -0.5 * table.magnitude_exponent);
      for (const auto& [zbit, phase] : table.entries) col[zbit] = phase.to_complex() * mag;
    };
    const PolishOutcome polished = polish_support(support, load_column, psi);
    if (polished.ok && polished.l1 < result.l1) {
      result.l1 = polished.l1;
      result.decomposition.coefficients = polished.coefficients;
    }
  }

  result.xi = result.l1 * result.l1;
  result.rational = rational_hint(result.xi);
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return result;
}

ExtentResult extent_dictionary(const StateVector& psi, const StateOrdering& ordering,
                               const SolverParams& params) {
  const auto t_start = std::chrono::steady_clock::now();
  const int n = qubit_count_of(psi);
  if (n != ordering.qubits()) {
    throw ValidationError("state and ordering disagree on the qubit count");
  }
  if (n > 4) throw ResourceGuard("the dictionary method is gated to n <= 4");
  if (std::abs(l2_norm(psi) - 1.0) > 1e-12) {
    throw ValidationError("state is not normalised; pass --normalize to rescale");
  }
  if (params.rho <= 0 || params.eps_abs <= 0 || params.eps_rel <= 0 ||
      params.over_relaxation < 1.0 || params.over_relaxation > 1.8) {
    throw ValidationError("invalid solver parameters");
  }

  const uint64_t dim = uint64_t{1} << n;
  const uint64_t num_states = ordering.num_states();

  // Dense dictionary, one column per stabiliser state, row major.
  CVec dict(dim * num_states);
  for (uint64_t idx = 0; idx < num_states; ++idx) {
    const ExactAmplitudeTable table = amplitudes(ordering.check_matrix(idx));
    const double mag = std::pow(2.0, -0.5 * table.magnitude_exponent);
    for (const auto& [z, phase] : table.entries) {
      dict[z * num_states + idx] = phase.to_complex() * mag;
    }
  }

  // Gram matrix of the rows, factorised once for the affine projection.
  CVec gram(dim * dim, {0.0, 0.0});
  for (uint64_t r = 0; r < dim; ++r) {
    const Complex* row_r = dict.data() + r * num_states;
    for (uint64_t c = 0; c <= r; ++c) {
      const Complex* row_c = dict.data() + c * num_states;
      Complex acc{0.0, 0.0};
      for (uint64_t j = 0; j < num_states; ++j) acc += row_r[j] * std::conj(row_c[j]);
      gram[r * dim + c] = acc;
    }
  }
  for (uint64_t r = 0; r < dim; ++r) {
    for (uint64_t c = r + 1; c < dim; ++c) gram[r * dim + c] = std::conj(gram[c * dim + r]);
  }
  if (!cholesky(gram, dim)) throw Error("dictionary Gram matrix is not positive definite");

  const auto forward = [&](const CVec& w, CVec& out) {
    for (uint64_t r = 0; r < dim; ++r) {
      const Complex* row = dict.data() + r * num_states;
      Complex acc{0.0, 0.0};
      for (uint64_t j = 0; j < num_states; ++j) acc += row[j] * w[j];
      out[r] = acc;
    }
  };
  // Projection onto { x : S x = psi }.
  const auto project = [&](CVec& x) {
    CVec resid(dim);
    forward(x, resid);
    for (uint64_t r = 0; r < dim; ++r) resid[r] -= psi[r];
    cholesky_solve(gram, dim, resid);
    parallel_for(num_states, params.threads, [&](uint64_t begin, uint64_t end) {
      for (uint64_t j = begin; j < end; ++j) {
        Complex acc{0.0, 0.0};
        for (uint64_t r = 0; r < dim; ++r) acc += std::conj(dict[r * num_states + j]) * resid[r];
        x[j] -= acc;
      }
    });
  };

  CVec x(num_states, {0.0, 0.0});
  CVec z(num_states, {0.0, 0.0});
  CVec u(num_states, {0.0, 0.0});
  project(x);  // minimum-norm feasible start
  std::copy(x.begin(), x.end(), z.begin());

  const double rho = params.rho;
  const double kappa = 1.0 / rho;
  const double alpha = params.over_relaxation;
  ExtentResult result;
  double min_obj_seen = std::numeric_limits<double>::infinity();

  uint64_t it = 0;
  for (it = 1; it <= params.max_iter; ++it) {
    for (uint64_t j = 0; j < num_states; ++j) x[j] = z[j] - u[j];
    project(x);
    double obj = 0.0;
    double rp_sq = 0.0;
    double dz_sq = 0.0;
    double z_sq = 0.0;
    double x_sq = 0.0;
    double u_sq = 0.0;
    for (uint64_t j = 0; j < num_states; ++j) {
      const Complex xh = alpha * x[j] + (1.0 - alpha) * z[j];
      const Complex w = xh + u[j];
      const Complex zn = shrink(w, kappa);
      dz_sq += std::norm(zn - z[j]);
      u[j] = w - zn;
      rp_sq += std::norm(x[j] - zn);
      obj += cabs(x[j]);
      z_sq += std::norm(zn);
      x_sq += std::norm(x[j]);
      u_sq += std::norm(u[j]);
      z[j] = zn;
    }
    result.l1 = obj;
    result.primal_residual = std::sqrt(rp_sq);
    result.dual_residual = rho * std::sqrt(dz_sq);
    if (it > 100) {
      result.objective_backslide = std::max(result.objective_backslide, obj - min_obj_seen);
    }
    min_obj_seen = std::min(min_obj_seen, obj);
    if (it % kCheckPeriod == 0 || it == params.max_iter) {
      const double eps_pri = std::sqrt(static_cast<double>(num_states)) * params.eps_abs +
                             params.eps_rel * std::max(std::sqrt(x_sq), std::sqrt(z_sq));
      const double eps_dual = std::sqrt(static_cast<double>(num_states)) * params.eps_abs +
                              params.eps_rel * rho * std::sqrt(u_sq);
      if (result.primal_residual <= eps_pri && result.dual_residual <= eps_dual) {
        result.converged = true;
        break;
      }
    }
  }
  result.iterations = std::min(it, params.max_iter);

  SparseVector raw;
  for (uint64_t j = 0; j < num_states; ++j) {
    if (cabs(x[j]) > kPruneTol) raw.emplace_back(j, x[j]);
  }
  result.decomposition.n = n;
  result.decomposition.coefficients = std::move(raw);

  double z_max = 0.0;
  for (const Complex& v : z) z_max = std::max(z_max, cabs(v));
  std::vector<uint64_t> support;
  const double threshold = std::max(1e-7, 1e-6 * z_max);
  for (uint64_t j = 0; j < num_states; ++j) {
    if (cabs(z[j]) > threshold) support.push_back(j);
  }
  const auto load_column = [&](uint64_t idx, CVec& col) {
    for (uint64_t r = 0; r < dim; ++r) col[r] = dict[r * num_states + idx];
  };
  const PolishOutcome polished = polish_support(support, load_column, psi);
  if (polished.ok && polished.l1 < result.l1) {
    result.l1 = polished.l1;
    result.decomposition.coefficients = polished.coefficients;
  }

  result.xi = result.l1 * result.l1;
  result.rational = rational_hint(result.xi);
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return result;
}

}  // namespace stabdep
