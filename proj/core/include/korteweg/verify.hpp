#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "korteweg/simulation.hpp"

namespace korteweg {

struct VerifyOptions {
  int n = 0;       ///< grid size; 0 selects the suite default
  long steps = 0;  ///< 0 selects the suite default
  std::vector<std::string> laws;  ///< bohm suite: constant, quantum, generic
  int seeds = 1;                  ///< entropy suite: number of seeds
  std::uint64_t seed = 0;         ///< first seed
  std::optional<std::filesystem::path> csv_dir;  ///< where CSV tables go
};

struct VerifyReport {
  std::string suite;
  bool passed = true;
  std::vector<std::string> lines;             ///< one human-readable line per check
  std::map<std::string, std::string> tables;  ///< file name -> CSV text
};

/// Runs one suite: duality, symmetry, bohm, entropy or nusselt.
/// Throws UsageError for an unknown suite name.
VerifyReport verify(const std::string& suite, const VerifyOptions& options);

VerifyReport verify_duality(int n, std::uint64_t seed);
VerifyReport verify_symmetry(int n, int fields, std::uint64_t seed);
VerifyReport verify_bohm(int n, const std::vector<std::string>& laws);
VerifyReport verify_entropy(int n, long steps, int seeds, std::uint64_t first_seed);
VerifyReport verify_nusselt(int n, long steps);

/// Sourceless periodic Euler-Korteweg problem with random smooth data on the
/// unit square, used by the entropy checks. Even seeds use K = 1e-3, odd
/// seeds K = 1e-3 / rho; pressure p = rho^2.
struct EntropyCase {
  State initial;
  Model model;
};
EntropyCase entropy_case(int n, std::uint64_t seed);

/// Uniform Nusselt film (glycerin-water, 6.4 degree incline, 1 mm depth).
struct NusseltCase {
  State initial;
  Model model;
};
NusseltCase nusselt_case(int nx, int ny);

/// Largest relative deviation of `s` from `ref`: density against max|rho|,
/// both momenta against max|rho u|.
double relative_deviation(const State& s, const State& ref);

}  // namespace korteweg
