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

// End-to-end acceptance gate. Each criterion prints exactly one PASS/FAIL
// line (SKIP for the optional extended-scale reproduction) and the binary
// exits nonzero if any executed criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stabdep/verify.hpp"

using namespace stabdep;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& text) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, text.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void skip(int criterion, const std::string& text) {
  std::printf("SKIP criterion %d: %s\n", criterion, text.c_str());
  std::fflush(stdout);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Context {
  int threads = 2;
  bool extended = false;
  std::vector<StateOrdering> orderings;  // index n-1, for n = 1..4
  std::vector<TripleBasis> bases;
};

// n = 4 solves get one order of magnitude looser stopping than the library
// defaults; the exact re-solve on the converged support supplies the final
// digits and the values below are still checked at the stated tolerances.
SolverParams solve_params(int n, int threads) {
  SolverParams p;
  p.threads = threads;
  if (n >= 4) {
    p.eps_abs = 1e-7;
    p.eps_rel = 1e-6;
  }
  return p;
}

double basis_xi(const Context& ctx, const StateVector& psi) {
  const int n = qubit_count_of(psi);
  const StateOrdering& ordering = ctx.orderings[n - 1];
  const Decomposition c = computational_decomposition(psi, ordering);
  return minimize_l1_affine(c, ctx.bases[n - 1], solve_params(n, ctx.threads), &ordering).xi;
}

double dict_xi(const Context& ctx, const StateVector& psi) {
  const int n = qubit_count_of(psi);
  return extent_dictionary(psi, ctx.orderings[n - 1], solve_params(n, ctx.threads)).xi;
}

void criterion_counts() {
  const auto start = Clock::now();
  const uint64_t expected_lagr[5] = {3, 15, 135, 2295, 75735};
  const uint64_t expected_states[5] = {6, 60, 1080, 36720, 2423520};
  bool ok = true;
  std::ostringstream detail;
  for (int n = 1; n <= 5; ++n) {
    const LagrangianList list = enumerate_lagrangians(n);
    const uint64_t states = list.count() << n;
    if (list.count() != expected_lagr[n - 1] || states != expected_states[n - 1] ||
        list.count() != lagrangian_count_formula(n)) {
      ok = false;
      detail << "n=" << n << " counts wrong (" << list.count() << ", " << states << "); ";
    }
    const SuiteResult counts = verify_counts(n);  // exhaustive scan at n <= 2
    if (!counts.pass) {
      ok = false;
      detail << "n=" << n << " " << counts.detail << "; ";
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 60.0) {
    ok = false;
    detail << "took " << elapsed << " s (budget 60 s); ";
  }
  detail << "lagrangians 3,15,135,2295,75735 and states 6,60,1080,36720,2423520 in " << elapsed
         << " s";
  report(1, ok, "enumeration counts: " + detail.str());
}

void criterion_columns(const Context& ctx) {
  const auto start = Clock::now();
  bool ok = true;
  std::ostringstream detail;
  for (int n = 1; n <= 4; ++n) {
    const SuiteResult r = verify_columns(ctx.orderings[n - 1], ctx.bases[n - 1], ctx.threads);
    if (!r.pass) ok = false;
    detail << "n=" << n << ": " << r.detail << "; ";
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 300.0) {
    ok = false;
    detail << "n=4 pass exceeded 5 min; ";
  }
  detail << "in " << elapsed << " s";
  report(2, ok, "basis exactness in the ring Z[i, sqrt(2)]: " + detail.str());
}

void criterion_triangular(const Context& ctx) {
  bool ok = true;
  std::ostringstream detail;
  for (int n = 1; n <= 4; ++n) {
    const SuiteResult r = verify_triangular(ctx.orderings[n - 1], ctx.bases[n - 1]);
    if (!r.pass) ok = false;
    detail << "n=" << n << ": " << r.detail << "; ";
  }
  report(3, ok, "triangularity and dimension |S| - 2^n: " + detail.str());
}

void criterion_solve(const Context& ctx) {
  const SuiteResult r = verify_solve(ctx.orderings[2], ctx.bases[2], 100, 20260808);
  report(4, r.pass, "triangular-solve roundtrip at n=3: " + r.detail);
}

void criterion_small_extents(const Context& ctx) {
  const auto start = Clock::now();
  bool ok = true;
  std::ostringstream detail;

  const double xi_t1 = basis_xi(ctx, t_tensor(1));
  if (std::abs(xi_t1 - 1.171573) > 1e-4) ok = false;
  detail << "xi(T)=" << xi_t1 << "; ";

  const double xi_t2 = basis_xi(ctx, t_tensor(2));
  if (std::abs(xi_t2 - 1.372583) > 1e-3) ok = false;
  detail << "xi(T^2)=" << xi_t2 << "; ";

  const double xi_ccz = basis_xi(ctx, ckz_magic(3));
  if (std::abs(xi_ccz - 1.7778) > 2e-3) ok = false;
  detail << "xi(CCZ)=" << xi_ccz << "; ";

  for (int n = 1; n <= 4; ++n) {
    const SuiteResult cross = verify_extent_cross(ctx.orderings[n - 1], ctx.bases[n - 1],
                                                  solve_params(n, ctx.threads), 10, 77 + n);
    if (!cross.pass) ok = false;
    detail << "cross n=" << n << ": " << cross.detail << "; ";
  }

  std::mt19937_64 rng(1234321);
  double worst_stab = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const StateOrdering& ordering = ctx.orderings[n - 1];
    std::uniform_int_distribution<uint64_t> pick(0, ordering.num_states() - 1);
    const int samples = n <= 3 ? 50 : 12;
    for (int trial = 0; trial < samples; ++trial) {
      const StateVector psi = to_dense_state(amplitudes(ordering.check_matrix(pick(rng))));
      worst_stab = std::max(worst_stab, std::abs(basis_xi(ctx, psi) - 1.0));
    }
  }
  if (worst_stab > 1e-6) ok = false;
  detail << "stabiliser worst |xi-1|=" << worst_stab << "; in " << seconds_since(start) << " s";
  report(5, ok, "small-n extents against the dictionary oracle: " + detail.str());
}

void criterion_dicke_symmetry(const Context& ctx) {
  bool ok = true;
  std::ostringstream detail;
  const double b41 = basis_xi(ctx, dicke(4, 1));
  const double b42 = basis_xi(ctx, dicke(4, 2));
  const double b43 = basis_xi(ctx, dicke(4, 3));
  const double d41 = dict_xi(ctx, dicke(4, 1));
  const double d42 = dict_xi(ctx, dicke(4, 2));
  const double d43 = dict_xi(ctx, dicke(4, 3));
  if (std::abs(b41 - b43) > 1e-6) ok = false;
  for (const double delta : {std::abs(b41 - d41), std::abs(b42 - d42), std::abs(b43 - d43)}) {
    if (delta > 1e-4) ok = false;
  }
  detail << "xi(D41)=" << b41 << " xi(D42)=" << b42 << " xi(D43)=" << b43
         << "; |basis-dict| deltas " << std::abs(b41 - d41) << ", " << std::abs(b42 - d42) << ", "
         << std::abs(b43 - d43);
  report(6, ok, "Dicke weight symmetry at n=4: " + detail.str());
}

void criterion_extended(const Context& ctx) {
  if (!ctx.extended) {
    skip(7, "extended-scale reproduction (n=5 feasibility gate and the six-qubit table) "
            "runs with --extended; needs tens of GiB and hours");
    return;
  }
  bool ok = true;
  std::ostringstream detail;

  // Feasibility gate: an n = 5 basis-method run must complete.
  {
    const auto start = Clock::now();
    const StateOrdering ordering(enumerate_lagrangians(5));
    const TripleBasis basis = build_basis(ordering, {.threads = ctx.threads});
    SolverParams p = solve_params(5, ctx.threads);
    const Decomposition c = computational_decomposition(dicke(5, 2), ordering);
    const ExtentResult r = minimize_l1_affine(c, basis, p, &ordering);
    detail << "n=5 dicke:5,2 xi=" << r.xi << " in " << seconds_since(start) << " s; ";
    if (!r.converged) {
      ok = false;
      detail << "n=5 solve did not converge; ";
    }
  }

  // Six-qubit table: C^5 Z and the Dicke family.
  {
    const auto start = Clock::now();
    const StateOrdering ordering(enumerate_lagrangians(6));
    const TripleBasis basis =
        build_basis(ordering, {.threads = ctx.threads, .max_mem_bytes = uint64_t{60} << 30});
    SolverParams p = solve_params(6, ctx.threads);
    struct Row {
      StateVector psi;
      double expected;
      const char* hint;
      const char* name;
    };
    const Row rows[] = {
        {ckz_magic(6), 25.0 / 16.0, "25/16", "C5Z"},   {dicke(6, 1), 8.0 / 3.0, "8/3", "D61"},
        {dicke(6, 5), 8.0 / 3.0, "8/3", "D65"},        {dicke(6, 2), 12.0 / 5.0, "12/5", "D62"},
        {dicke(6, 4), 12.0 / 5.0, "12/5", "D64"},      {dicke(6, 3), 8.0 / 5.0, "8/5", "D63"},
    };
    for (const Row& row : rows) {
      const Decomposition c = computational_decomposition(row.psi, ordering);
      const ExtentResult r = minimize_l1_affine(c, basis, p, &ordering);
      std::string hint = "none";
      if (r.rational) {
        hint = std::to_string(r.rational->first) + "/" + std::to_string(r.rational->second);
      }
      detail << row.name << "=" << r.xi << " (~" << hint << "); ";
      if (std::abs(r.xi - row.expected) > 1e-3 || hint != row.hint) ok = false;
    }
    detail << "six-qubit table in " << seconds_since(start) << " s";
  }
  report(7, ok, "extended-scale reproduction: " + detail.str());
}

void criterion_pauli() {
  bool ok = true;
  std::ostringstream detail;
  for (int n = 1; n <= 3; ++n) {
    const SuiteResult r = verify_pauli(n);
    if (!r.pass) ok = false;
    detail << "n=" << n << ": " << r.detail << "; ";
  }
  report(8, ok, "Pauli algebra dense-matrix exactness: " + detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--extended") == 0) ctx.extended = true;
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) ctx.threads = std::atoi(argv[++i]);
  }

  for (int n = 1; n <= 4; ++n) {
    ctx.orderings.emplace_back(enumerate_lagrangians(n));
    ctx.bases.push_back(build_basis(ctx.orderings.back(), {.threads = ctx.threads}));
  }

  criterion_counts();
  criterion_columns(ctx);
  criterion_triangular(ctx);
  criterion_solve(ctx);
  criterion_small_extents(ctx);
  criterion_dicke_symmetry(ctx);
  criterion_extended(ctx);
  criterion_pauli();

  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all executed criteria passed\n");
  return 0;
}
