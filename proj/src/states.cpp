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

#include "stabdep/states.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace stabdep {

namespace {

void check_qubits(int n, int min_n) {
  if (n < min_n || n > 20) {
    throw ValidationError("state constructors accept " + std::to_string(min_n) +
                          " <= n <= 20 qubits");
  }
}

}  // namespace

StateVector dicke(int n, int k) {
  check_qubits(n, 1);
  if (k < 0 || k > n) throw ValidationError("Dicke weight must satisfy 0 <= k <= n");
  const uint64_t dim = uint64_t{1} << n;
  uint64_t weight_count = 0;
  for (uint64_t z = 0; z < dim; ++z) {
    if (std::popcount(z) == k) ++weight_count;
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(weight_count));
  StateVector psi(dim, {0.0, 0.0});
  for (uint64_t z = 0; z < dim; ++z) {
    if (std::popcount(z) == k) psi[z] = amp;
  }
  return psi;
}

StateVector ckz_magic(int n) {
  check_qubits(n, 2);
  const uint64_t dim = uint64_t{1} << n;
  const double amp = std::pow(2.0, -0.5 * n);
  StateVector psi(dim, {amp, 0.0});
  psi[dim - 1] = -amp;
  return psi;
}

StateVector t_tensor(int n) {
  check_qubits(n, 1);
  const uint64_t dim = uint64_t{1} << n;
  const double amp = std::pow(2.0, -0.5 * n);
  StateVector psi(dim);
  for (uint64_t z = 0; z < dim; ++z) {
    const double angle = std::numbers::pi * std::popcount(z) / 4.0;
    psi[z] = std::polar(amp, angle);
  }
  return psi;
}

StateVector ghz(int n) {
  check_qubits(n, 1);
  const uint64_t dim = uint64_t{1} << n;
  StateVector psi(dim, {0.0, 0.0});
  const double amp = 1.0 / std::sqrt(2.0);
  psi[0] = amp;
  psi[dim - 1] = amp;
  return psi;
}

StateVector from_file(const std::filesystem::path& path, bool normalize) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open amplitude file: " + path.string());
  std::map<uint64_t, std::complex<double>> amps;
  int n = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string bits;
    if (!(ls >> bits)) continue;
    double re = 0.0;
    double im = 0.0;
    if (!(ls >> re >> im)) {
      throw ValidationError("amplitude file line " + std::to_string(line_no) +
                            ": expected 'bitstring re im'");
    }
    if (n == -1) {
      n = static_cast<int>(bits.size());
      if (n < 1 || n > 20) {
        throw ValidationError("amplitude file bitstrings must have 1 to 20 characters");
      }
    } else if (static_cast<int>(bits.size()) != n) {
      throw ValidationError("amplitude file line " + std::to_string(line_no) +
                            ": inconsistent bitstring length");
    }
    uint64_t z = 0;
    for (const char c : bits) {
      if (c != '0' && c != '1') {
        throw ValidationError("amplitude file line " + std::to_string(line_no) +
                              ": bitstrings must be over {0,1}");
      }
      z = (z << 1) | static_cast<uint64_t>(c == '1');
    }
    if (!amps.emplace(z, std::complex<double>{re, im}).second) {
      throw ValidationError("amplitude file line " + std::to_string(line_no) +
                            ": duplicate bitstring");
    }
  }
  if (n == -1) throw ValidationError("amplitude file has no amplitude lines");
  StateVector psi(uint64_t{1} << n, {0.0, 0.0});
  for (const auto& [z, a] : amps) psi[z] = a;
  const double norm = l2_norm(psi);
  if (normalize) {
    if (norm == 0.0) throw ValidationError("amplitude file describes the zero vector");
    for (auto& a : psi) a /= norm;
  } else if (std::abs(norm - 1.0) > 1e-12) {
    throw ValidationError("amplitude file is not unit norm (" + std::to_string(norm) +
                          "); pass --normalize to rescale");
  }
  return psi;
}

std::string StateSpec::describe() const {
  switch (family) {
    case Family::kDicke: return "dicke:" + std::to_string(n) + "," + std::to_string(k);
    case Family::kCkz: return "czk:" + std::to_string(n);
    case Family::kTTensor: return "t:" + std::to_string(n);
    case Family::kGhz: return "ghz:" + std::to_string(n);
    case Family::kFile: return "file:" + path;
  }
  return "?";
}

StateSpec parse_state_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw ValidationError("state spec must look like family:args, got '" + spec + "'");
  }
  const std::string family = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  StateSpec out;
  auto parse_int = [&](const std::string& text) {
    size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(text, &used);
    } catch (const std::exception&) {
      throw ValidationError("bad integer '" + text + "' in state spec");
    }
    if (used != text.size()) throw ValidationError("bad integer '" + text + "' in state spec");
    return value;
  };
  if (family == "dicke") {
    const auto comma = args.find(',');
    if (comma == std::string::npos) throw ValidationError("dicke spec needs n,k");
    out.family = StateSpec::Family::kDicke;
    out.n = parse_int(args.substr(0, comma));
    out.k = parse_int(args.substr(comma + 1));
  } else if (family == "czk") {
    out.family = StateSpec::Family::kCkz;
    out.n = parse_int(args);
  } else if (family == "t") {
    out.family = StateSpec::Family::kTTensor;
    out.n = parse_int(args);
  } else if (family == "ghz") {
    out.family = StateSpec::Family::kGhz;
    out.n = parse_int(args);
  } else if (family == "file") {
    out.family = StateSpec::Family::kFile;
    out.path = args;
  } else {
    throw ValidationError("unknown state family '" + family + "'");
  }
  return out;
}

StateVector build_state(const StateSpec& spec, bool normalize) {
  switch (spec.family) {
    case StateSpec::Family::kDicke: return dicke(spec.n, spec.k);
    case StateSpec::Family::kCkz: return ckz_magic(spec.n);
    case StateSpec::Family::kTTensor: return t_tensor(spec.n);
    case StateSpec::Family::kGhz: return ghz(spec.n);
    case StateSpec::Family::kFile: return from_file(spec.path, normalize);
  }
  throw ValidationError("unknown state family");
}

int qubit_count_of(const StateVector& psi) {
  if (psi.empty() || (psi.size() & (psi.size() - 1)) != 0) {
    throw ValidationError("state vector length must be a power of two");
  }
  return std::countr_zero(psi.size());
}

double l2_norm(const StateVector& psi) {
  double s = 0.0;
  for (const auto& a : psi) s += std::norm(a);
  return std::sqrt(s);
}

}  // namespace stabdep
