#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "halfline_cli/commands.hpp"

namespace halfline::cli {

struct Reproduction {
  std::vector<Check> checks;
  nlohmann::json data = nlohmann::json::object();
  /// Extra output files: name -> contents.
  std::map<std::string, std::string> files;

  bool passed() const;
};

/// Word (1/2, 2, 1/2): invertible H, Fredholm but singular H_+.
Reproduction three_periodic_singular_half_line();

/// Right word 10101 from index 0, left word 110001100011 before it: an l2
/// kernel vector of the full-line operator at z = 0.
Reproduction eventually_periodic_kernel();

/// Exact Fibonacci coding against the substitution 1 -> 10, 0 -> 1.
Reproduction fibonacci_prefix(std::int64_t count);

/// Seeded sweep of integer periodic potentials: no integer Dirichlet eigenvalue.
Reproduction integer_avoidance(std::uint64_t seed, std::int64_t count);

/// The substitution word s_1 s_2 ... s_count.
std::vector<int> fibonacci_substitution_word(std::size_t count);

}  // namespace halfline::cli
