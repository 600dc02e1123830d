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
#include <filesystem>
#include <fstream>
#include <random>

#include <doctest.h>

#include "stabdep/verify.hpp"

using namespace stabdep;

namespace {

SymplecticVector sv(int n, uint64_t p, uint64_t q) {
  return {BitVec::from_value(n, p), BitVec::from_value(n, q)};
}

struct ColumnView {
  std::array<std::pair<uint64_t, uint8_t>, 3> entries;
};

ColumnView column(const TripleBasis& b, uint64_t j) {
  ColumnView v;
  for (int slot = 0; slot < 3; ++slot) {
    v.entries[slot] = {b.rows[3 * j + slot], b.codes[3 * j + slot]};
  }
  return v;
}

}  // namespace

TEST_CASE("split hand cases") {
  SUBCASE("|+> splits into |0> and |1>") {
    const CheckMatrix plus({sv(1, 0, 1)}, BitVec::from_value(1, 0));
    const SplitResult s = split(plus);
    REQUIRE(s.child_rows.size() == 1);
    CHECK(s.child_rows[0].to_row().value() == 0b01);  // Z check
    CHECK(s.child_lambdas[0].value() == 0);
    CHECK(s.child_lambdas[1].value() == 1);
    CHECK(s.taus[0] == Z4Phase(0));
    CHECK(s.taus[1] == Z4Phase(0));
  }
  SUBCASE("|+i> needs tau = i on the second child") {
    const CheckMatrix plus_i({sv(1, 1, 1)}, BitVec::from_value(1, 0));
    const SplitResult s = split(plus_i);
    CHECK(s.child_lambdas[0].value() == 0);
    CHECK(s.child_lambdas[1].value() == 1);
    CHECK(s.taus[1] == Z4Phase(1));
  }
  SUBCASE("Bell splits into |00> and |11>") {
    const CheckMatrix bell({sv(2, 0b00, 0b11), sv(2, 0b11, 0b00)}, BitVec(2));
    const SplitResult s = split(bell);
    REQUIRE(s.child_rows.size() == 2);
    CHECK(s.child_rows[0].to_row().value() == 0b0010);  // Z on qubit 1
    CHECK(s.child_rows[1].to_row().value() == 0b0001);  // Z on qubit 2
    CHECK(s.anchors[0].value() == 0b00);
    CHECK(s.anchors[1].value() == 0b11);
    CHECK(s.child_lambdas[0].value() == 0b00);
    CHECK(s.child_lambdas[1].value() == 0b11);
    CHECK(s.taus[1] == Z4Phase(0));
  }
  SUBCASE("computational states cannot be split") {
    const CheckMatrix zstate({sv(1, 1, 0)}, BitVec::from_value(1, 0));
    CHECK_THROWS_AS(split(zstate), ComputationalState);
  }
}

TEST_CASE("split halving for every small state") {
  for (int n = 1; n <= 3; ++n) {
    const StateOrdering ordering(enumerate_lagrangians(n));
    for (uint64_t idx = uint64_t{1} << n; idx < ordering.num_states(); ++idx) {
      const CheckMatrix cm = ordering.check_matrix(idx);
      const SplitResult s = split(cm);
      const auto parent_support = enumerate_support(support(cm));
      std::vector<uint64_t> child_union;
      for (int child = 0; child < 2; ++child) {
        const CheckMatrix child_cm(s.child_rows, s.child_lambdas[child]);
        CHECK(support_rank(child_cm) == support_rank(cm) - 1);
        const auto child_support = enumerate_support(support(child_cm));
        CHECK(child_support.size() * 2 == parent_support.size());
        child_union.insert(child_union.end(), child_support.begin(), child_support.end());
      }
      std::sort(child_union.begin(), child_union.end());
      CHECK(std::adjacent_find(child_union.begin(), child_union.end()) == child_union.end());
      CHECK(child_union == parent_support);
    }
  }
}

TEST_CASE("single qubit basis matches the worked example") {
  const StateOrdering ordering(enumerate_lagrangians(1));
  const TripleBasis b = build_basis(ordering);
  CHECK(b.num_rows == 6);
  CHECK(b.num_cols == 4);
  CHECK(b.nnz() == 12);

  // Column 0 = |+>:  -2^(-1/2) at |0> and |1>, diagonal at row 2.
  {
    const ColumnView v = column(b, 0);
    CHECK(v.entries[0] == std::pair<uint64_t, uint8_t>{0, 0});
    CHECK(v.entries[1] == std::pair<uint64_t, uint8_t>{1, 0});
    CHECK(v.entries[2] == std::pair<uint64_t, uint8_t>{2, kEntryCodeOne});
  }
  // Column 1 = |->:  -2^(-1/2) at |0>, +2^(-1/2) at |1>.
  {
    const ColumnView v = column(b, 1);
    CHECK(v.entries[0] == std::pair<uint64_t, uint8_t>{0, 0});
    CHECK(v.entries[1] == std::pair<uint64_t, uint8_t>{1, 2});
    CHECK(v.entries[2] == std::pair<uint64_t, uint8_t>{3, kEntryCodeOne});
  }
  // Column 2 = |+i>: -2^(-1/2) at |0>, -i 2^(-1/2) at |1>.
  {
    const ColumnView v = column(b, 2);
    CHECK(v.entries[0] == std::pair<uint64_t, uint8_t>{0, 0});
    CHECK(v.entries[1] == std::pair<uint64_t, uint8_t>{1, 1});
    CHECK(v.entries[2] == std::pair<uint64_t, uint8_t>{4, kEntryCodeOne});
  }
  // Column 3 = |-i>: -2^(-1/2) at |0>, +i 2^(-1/2) at |1>.
  {
    const ColumnView v = column(b, 3);
    CHECK(v.entries[0] == std::pair<uint64_t, uint8_t>{0, 0});
    CHECK(v.entries[1] == std::pair<uint64_t, uint8_t>{1, 3});
    CHECK(v.entries[2] == std::pair<uint64_t, uint8_t>{5, kEntryCodeOne});
  }
}

TEST_CASE("all columns are exact dependencies for n up to 3") {
  for (int n = 1; n <= 3; ++n) {
    const StateOrdering ordering(enumerate_lagrangians(n));
    const TripleBasis b = build_basis(ordering);
    CHECK(verify_columns(ordering, b, 2).pass);
    CHECK(verify_triangular(ordering, b).pass);
  }
}

TEST_CASE("threaded build is identical to sequential") {
  const StateOrdering ordering(enumerate_lagrangians(3));
  const TripleBasis sequential = build_basis(ordering, {.threads = 1});
  const TripleBasis threaded = build_basis(ordering, {.threads = 4});
  CHECK(sequential.rows == threaded.rows);
  CHECK(sequential.codes == threaded.codes);
}

TEST_CASE("canonical dependencies") {
  const StateOrdering ordering(enumerate_lagrangians(1));
  SUBCASE("|+>") {
    const CanonicalDependency dep = canonical_dependency(ordering, 2);
    REQUIRE(dep.entries.size() == 3);
    const double inv_root2 = 1.0 / std::sqrt(2.0);
    CHECK(dep.entries[0].first == 0);
    CHECK(std::abs(dep.entries[0].second - std::complex<double>{-inv_root2, 0.0}) < 1e-15);
    CHECK(dep.entries[1].first == 1);
    CHECK(std::abs(dep.entries[1].second - std::complex<double>{-inv_root2, 0.0}) < 1e-15);
    CHECK(dep.entries[2] == SparseEntry{2, {1.0, 0.0}});
  }
  SUBCASE("|-i> flips the sign of the imaginary amplitude") {
    const CanonicalDependency dep = canonical_dependency(ordering, 5);
    REQUIRE(dep.entries.size() == 3);
    const double inv_root2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(dep.entries[1].second - std::complex<double>{0.0, inv_root2}) < 1e-15);
  }
  SUBCASE("computational states are rejected") {
    CHECK_THROWS_AS(canonical_dependency(ordering, 0), ValidationError);
  }
}

TEST_CASE("triangular solve") {
  const StateOrdering ordering(enumerate_lagrangians(1));
  const TripleBasis b = build_basis(ordering);

  SUBCASE("columns solve to unit vectors") {
    for (uint64_t j = 0; j < b.num_cols; ++j) {
      SparseVector gamma;
      for (int slot = 0; slot < 3; ++slot) {
        gamma.emplace_back(b.rows[3 * j + slot], decode_entry(b.codes[3 * j + slot]));
      }
      std::sort(gamma.begin(), gamma.end(),
                [](const SparseEntry& a, const SparseEntry& c) { return a.first < c.first; });
      const TriangularSolveResult solved = triangular_solve(b, gamma);
      REQUIRE(solved.x.size() == 1);
      CHECK(solved.x[0].first == j);
      CHECK(std::abs(solved.x[0].second - std::complex<double>{1.0, 0.0}) < 1e-15);
      CHECK(solved.residual < 1e-15);
    }
  }
  SUBCASE("canonical dependency of |+i>") {
    const TriangularSolveResult solved =
        triangular_solve(b, canonical_dependency(ordering, 4).entries);
    REQUIRE(solved.x.size() == 1);
    CHECK(solved.x[0].first == 2);
    CHECK(std::abs(solved.x[0].second - std::complex<double>{1.0, 0.0}) < 1e-14);
    CHECK(solved.residual < 1e-14);
  }
  SUBCASE("random canonical dependencies at n = 3") {
    const StateOrdering ord3(enumerate_lagrangians(3));
    const TripleBasis b3 = build_basis(ord3);
    CHECK(verify_solve(ord3, b3, 30, 2024).pass);
  }
}

TEST_CASE("basis io") {
  const StateOrdering ordering(enumerate_lagrangians(2));
  const TripleBasis b = build_basis(ordering);
  const auto path = std::filesystem::temp_directory_path() / "stabdep_test_basis_n2.stbb";

  SUBCASE("binary round trip") {
    export_basis(b, path, BasisFormat::kBinary);
    const TripleBasis loaded = import_basis(path);
    CHECK(loaded.n == b.n);
    CHECK(loaded.num_rows == b.num_rows);
    CHECK(loaded.num_cols == b.num_cols);
    CHECK(loaded.rows == b.rows);
    CHECK(loaded.codes == b.codes);
    std::filesystem::remove(path);
  }
  SUBCASE("csv export of the single qubit basis has 12 data rows") {
    const StateOrdering ord1(enumerate_lagrangians(1));
    const TripleBasis b1 = build_basis(ord1);
    const auto csv = std::filesystem::temp_directory_path() / "stabdep_test_basis_n1.csv";
    export_basis(b1, csv, BasisFormat::kCsv);
    std::ifstream in(csv);
    std::string line;
    int lines = 0;
    std::getline(in, line);
    CHECK(line == "col,row,code");
    while (std::getline(in, line)) {
      if (!line.empty()) ++lines;
    }
    CHECK(lines == 12);
    std::filesystem::remove(csv);
  }
  SUBCASE("streamed write matches build plus export") {
    const auto streamed = std::filesystem::temp_directory_path() / "stabdep_test_stream.stbb";
    const auto exported = std::filesystem::temp_directory_path() / "stabdep_test_export.stbb";
    write_basis_file(ordering, {.threads = 2}, streamed, BasisFormat::kBinary);
    export_basis(b, exported, BasisFormat::kBinary);
    std::ifstream a(streamed, std::ios::binary);
    std::ifstream c(exported, std::ios::binary);
    const std::string bytes_a((std::istreambuf_iterator<char>(a)),
                              std::istreambuf_iterator<char>());
    const std::string bytes_c((std::istreambuf_iterator<char>(c)),
                              std::istreambuf_iterator<char>());
    CHECK(bytes_a == bytes_c);
    const TripleBasis loaded = import_basis(streamed);
    CHECK(loaded.rows == b.rows);
    std::filesystem::remove(streamed);
    std::filesystem::remove(exported);
  }
  SUBCASE("wrong magic is rejected") {
    const auto junk = std::filesystem::temp_directory_path() / "stabdep_test_basis_junk.stbb";
    std::ofstream out(junk, std::ios::binary);
    out << "JUNKJUNKJUNK";
    out.close();
    CHECK_THROWS_AS(import_basis(junk), CorruptFile);
    std::filesystem::remove(junk);
  }
  SUBCASE("truncated file is rejected") {
    export_basis(b, path, BasisFormat::kBinary);
    std::filesystem::resize_file(path, std::filesystem::file_size(path) - 5);
    CHECK_THROWS_AS(import_basis(path), CorruptFile);
    std::filesystem::remove(path);
  }
}
