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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "stabdep/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace stabdep;

namespace {

// Exit codes: 0 ok, 2 validation, 3 resource guard, 4 verification failure,
// 5 solver non-convergence.
constexpr int kOkExit = 0;
constexpr int kValidationExit = 2;
constexpr int kResourceExit = 3;
constexpr int kVerifyExit = 4;
constexpr int kSolverExit = 5;

std::optional<fs::path> default_cache_path(int n) {
  const char* dir = std::getenv("STABDEP_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return fs::path(dir) / ("lagrangians_n" + std::to_string(n) + ".stlg");
}

/// Loads the Lagrangian list from an explicit file, then the cache directory,
/// then enumerates from scratch.
LagrangianList obtain_list(int n, const std::string& cache_file, bool force) {
  if (!cache_file.empty()) return load_cache(cache_file, n);
  if (const auto path = default_cache_path(n); path && fs::exists(*path)) {
    return load_cache(*path, n);
  }
  return enumerate_lagrangians(n, {.soft_max_n = 6, .force = force});
}

uint64_t basis_bytes_estimate(int n) {
  return (state_count_formula(n) - (uint64_t{1} << n)) * 3 * 9;
}

// The solver working set: the basis, its transposed copy, and five vectors
// of |S| complex doubles.
uint64_t extent_bytes_estimate(int n) {
  const uint64_t states = state_count_formula(n);
  return basis_bytes_estimate(n) * 2 + states * 16 * 5;
}

void guard_memory(uint64_t estimate, uint64_t limit, bool force, const std::string& what) {
  if (estimate > limit && !force) {
    throw ResourceGuard(what + " needs about " + std::to_string(estimate >> 20) +
                        " MiB, above the --max-mem limit of " + std::to_string(limit >> 20) +
                        " MiB; pass --force to proceed");
  }
}

json params_json(const SolverParams& p) {
  return json{{"rho", p.rho},
              {"max_iter", p.max_iter},
              {"eps_abs", p.eps_abs},
              {"eps_rel", p.eps_rel},
              {"over_relaxation", p.over_relaxation},
              {"threads", p.threads}};
}

json result_json(const std::string& spec, int n, const std::string& method,
                 const ExtentResult& r, const SolverParams& p) {
  json out{{"state_spec", spec},
           {"n", n},
           {"method", method},
           {"xi", r.xi},
           {"l1", r.l1},
           {"iterations", r.iterations},
           {"primal_residual", r.primal_residual},
           {"dual_residual", r.dual_residual},
           {"wall_time_s", r.wall_time_s},
           {"converged", r.converged},
           {"params", params_json(p)}};
  if (r.rational) {
    out["rational_hint"] = std::to_string(r.rational->first) + "/" +
                           std::to_string(r.rational->second);
  } else {
    out["rational_hint"] = nullptr;
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"sparse triple bases for stabiliser-state linear dependencies "
               "and stabiliser extent"};
  app.require_subcommand(1);

  uint64_t max_mem_gib = 16;
  app.add_option("--max-mem", max_mem_gib, "memory guard in GiB")->capture_default_str();

  // enumerate
  auto* cmd_enum = app.add_subcommand("enumerate", "enumerate Lagrangian subspaces");
  int enum_n = 0;
  std::string enum_out;
  bool enum_count_only = false;
  bool enum_force = false;
  cmd_enum->add_option("--n", enum_n, "qubit count")->required();
  cmd_enum->add_option("--out", enum_out, "cache file to write");
  cmd_enum->add_flag("--count-only", enum_count_only, "print counts without materialising");
  cmd_enum->add_flag("--force", enum_force, "override the resource guard");

  // basis
  auto* cmd_basis = app.add_subcommand("basis", "build the sparse dependency basis");
  int basis_n = 0;
  std::string basis_out;
  std::string basis_format = "bin";
  std::string basis_cache;
  int basis_threads = 1;
  bool basis_force = false;
  cmd_basis->add_option("--n", basis_n, "qubit count")->required();
  cmd_basis->add_option("--out", basis_out, "basis file to write");
  cmd_basis->add_option("--format", basis_format, "bin or csv")
      ->check(CLI::IsMember({"bin", "csv"}))
      ->capture_default_str();
  cmd_basis->add_option("--cache", basis_cache, "Lagrangian cache file to load");
  cmd_basis->add_option("--threads", basis_threads, "worker threads (0 = all cores)")
      ->capture_default_str();
  cmd_basis->add_flag("--force", basis_force, "override the resource guard");

  // extent
  auto* cmd_extent = app.add_subcommand("extent", "compute the stabiliser extent of a state");
  std::string extent_state;
  std::string extent_method = "basis";
  std::string extent_basis_file;
  std::string extent_cache;
  SolverParams params;
  double tol = 0.0;
  bool extent_json = false;
  bool extent_normalize = false;
  bool extent_force = false;
  cmd_extent->add_option("--state", extent_state, "state spec: dicke:n,k | czk:n | t:n | ghz:n | file:path")
      ->required();
  cmd_extent->add_option("--method", extent_method, "basis or dictionary")
      ->check(CLI::IsMember({"basis", "dictionary"}))
      ->capture_default_str();
  cmd_extent->add_option("--basis-file", extent_basis_file, "pre-built basis to load");
  cmd_extent->add_option("--cache", extent_cache, "Lagrangian cache file to load");
  cmd_extent->add_option("--rho", params.rho, "penalty parameter")->capture_default_str();
  cmd_extent->add_option("--max-iter", params.max_iter, "iteration cap")->capture_default_str();
  cmd_extent->add_option("--tol", tol, "sets eps_abs = tol and eps_rel = 10 tol");
  cmd_extent->add_option("--threads", params.threads, "worker threads (0 = all cores)")
      ->capture_default_str();
  cmd_extent->add_flag("--json", extent_json, "machine-readable output");
  cmd_extent->add_flag("--normalize", extent_normalize, "rescale non-unit input states");
  cmd_extent->add_flag("--force", extent_force, "override the resource guard");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "run an invariant suite");
  int verify_n = 0;
  std::string verify_suite = "all";
  int verify_threads = 1;
  bool verify_json = false;
  cmd_verify->add_option("--n", verify_n, "qubit count")->required();
  cmd_verify
      ->add_option("--suite", verify_suite,
                   "pauli | counts | columns | triangular | solve | extent-cross | all")
      ->check(CLI::IsMember({"pauli", "counts", "columns", "triangular", "solve", "extent-cross",
                             "all"}))
      ->capture_default_str();
  cmd_verify->add_option("--threads", verify_threads, "worker threads (0 = all cores)")
      ->capture_default_str();
  cmd_verify->add_flag("--json", verify_json, "machine-readable output");

  // info
  auto* cmd_info = app.add_subcommand("info", "print sizes and cache status");
  int info_n = 0;
  cmd_info->add_option("--n", info_n, "qubit count");

  CLI11_PARSE(app, argc, argv);
  const uint64_t max_mem = max_mem_gib << 30;

  if (cmd_enum->parsed()) {
    if (enum_n > 6 && !enum_force) {
      throw ResourceGuard("enumeration beyond n = 6 must be forced explicitly");
    }
    if (enum_count_only) {
      std::cout << "lagrangians=" << lagrangian_count_formula(enum_n)
                << " states=" << state_count_formula(enum_n) << "\n";
      return kOkExit;
    }
    const uint64_t estimate = lagrangian_count_formula(enum_n) * enum_n * 8;
    guard_memory(estimate, max_mem, enum_force, "enumeration");
    const LagrangianList list = enumerate_lagrangians(enum_n, {.soft_max_n = 6, .force = enum_force});
    std::cout << "lagrangians=" << list.count() << " states=" << (list.count() << enum_n) << "\n";
    std::string out = enum_out;
    if (out.empty()) {
      if (const auto path = default_cache_path(enum_n)) {
        fs::create_directories(path->parent_path());
        out = path->string();
      }
    }
    if (!out.empty()) {
      save_cache(list, out);
      std::cout << "wrote " << out << "\n";
    }
    return kOkExit;
  }

  if (cmd_basis->parsed()) {
    const StateOrdering ordering(obtain_list(basis_n, basis_cache, basis_force));
    const uint64_t cols = ordering.num_noncomputational();
    std::cout << "rows=" << ordering.num_states() << " cols=" << cols << " nnz=" << 3 * cols
              << "\n";
    const BasisFormat fmt = basis_format == "csv" ? BasisFormat::kCsv : BasisFormat::kBinary;
    if (!basis_out.empty()) {
      // Streamed chunk by chunk; the matrix is never resident.
      write_basis_file(ordering, {.threads = basis_threads, .force = basis_force}, basis_out, fmt);
      std::cout << "wrote " << basis_out << "\n";
    } else {
      guard_memory(basis_bytes_estimate(basis_n), max_mem, basis_force, "the basis");
      build_basis(ordering, {.threads = basis_threads, .max_mem_bytes = max_mem,
                             .force = basis_force});
    }
    return kOkExit;
  }

  if (cmd_extent->parsed()) {
    if (tol > 0.0) {
      params.eps_abs = tol;
      params.eps_rel = 10.0 * tol;
    }
    const StateSpec spec = parse_state_spec(extent_state);
    StateVector psi = build_state(spec, extent_normalize);
    if (extent_normalize) {
      const double norm = l2_norm(psi);
      if (norm == 0.0) throw ValidationError("cannot normalise the zero vector");
      for (auto& a : psi) a /= norm;
    }
    const int n = qubit_count_of(psi);
    ExtentResult result;
    if (extent_method == "dictionary") {
      const StateOrdering ordering(obtain_list(n, extent_cache, extent_force));
      result = extent_dictionary(psi, ordering, params);
    } else {
      guard_memory(extent_bytes_estimate(n), max_mem, extent_force, "the extent solve");
      const StateOrdering ordering(obtain_list(n, extent_cache, extent_force));
      TripleBasis basis;
      if (!extent_basis_file.empty()) {
        basis = import_basis(extent_basis_file);
        if (basis.n != n) throw MismatchError("basis file was built for a different n");
      } else {
        basis = build_basis(ordering, {.threads = params.threads, .max_mem_bytes = max_mem,
                                       .force = extent_force});
      }
      result = minimize_l1_affine(computational_decomposition(psi, ordering), basis, params,
                                  &ordering);
    }
    if (extent_json) {
      std::cout << result_json(spec.describe(), n, extent_method, result, params).dump(2) << "\n";
    } else {
      std::cout << "state " << spec.describe() << "  n=" << n << "  method=" << extent_method
                << "\n";
      std::cout << "xi = " << result.xi << "  (l1 = " << result.l1 << ")";
      if (result.rational) {
        std::cout << "  ~ " << result.rational->first << "/" << result.rational->second;
      }
      std::cout << "\n";
      std::cout << "iterations=" << result.iterations << " converged=" << result.converged
                << " primal=" << result.primal_residual << " dual=" << result.dual_residual
                << " wall=" << result.wall_time_s << "s\n";
    }
    return result.converged ? kOkExit : kSolverExit;
  }

  if (cmd_verify->parsed()) {
    std::vector<SuiteResult> results;
    const bool all = verify_suite == "all";
    if (all || verify_suite == "pauli") {
      results.push_back(verify_pauli(std::min(verify_n, 3)));
    }
    if (all || verify_suite == "counts") {
      results.push_back(verify_counts(verify_n));
    }
    if (all || verify_suite == "columns" || verify_suite == "triangular" ||
        verify_suite == "solve" || verify_suite == "extent-cross") {
      const StateOrdering ordering(obtain_list(verify_n, "", false));
      const TripleBasis basis = build_basis(ordering, {.threads = verify_threads});
      if (all || verify_suite == "columns") {
        results.push_back(verify_columns(ordering, basis, verify_threads));
      }
      if (all || verify_suite == "triangular") {
        results.push_back(verify_triangular(ordering, basis));
      }
      if (all || verify_suite == "solve") {
        results.push_back(verify_solve(ordering, basis));
      }
      if ((all && verify_n <= 3) || verify_suite == "extent-cross") {
        SolverParams vparams;
        vparams.threads = verify_threads;
        results.push_back(verify_extent_cross(ordering, basis, vparams));
      }
    }
    bool ok = true;
    json report = json::array();
    for (const SuiteResult& r : results) {
      ok = ok && r.pass;
      if (verify_json) {
        report.push_back({{"suite", r.suite}, {"pass", r.pass}, {"detail", r.detail}});
      } else {
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.suite << ": " << r.detail << "\n";
      }
    }
    if (verify_json) std::cout << report.dump(2) << "\n";
    return ok ? kOkExit : kVerifyExit;
  }

  if (cmd_info->parsed()) {
    std::cout << "stabdep: sparse dependency bases for stabiliser states\n";
    if (info_n > 0) {
      std::cout << "n=" << info_n << " lagrangians=" << lagrangian_count_formula(info_n)
                << " states=" << state_count_formula(info_n)
                << " basis_bytes=" << basis_bytes_estimate(info_n) << "\n";
      if (const auto path = default_cache_path(info_n)) {
        std::cout << "cache " << path->string() << " "
                  << (fs::exists(*path) ? "present" : "absent") << "\n";
      }
    }
    return kOkExit;
  }

  return kValidationExit;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ResourceGuard& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return kResourceExit;
  } catch (const CorruptFile& e) {
    std::cerr << "corrupt file: " << e.what() << "\n";
    return kValidationExit;
  } catch (const MismatchError& e) {
    std::cerr << "mismatch: " << e.what() << "\n";
    return kValidationExit;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationExit;
  } catch (const Error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kVerifyExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationExit;
  }
}
