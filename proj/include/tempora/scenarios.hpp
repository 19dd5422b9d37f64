#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "tempora/scenario.hpp"
#include "tempora/sdp.hpp"

namespace tempora {

// Sign pattern gamma of sum_i gamma_i <A_i A_{i+1}>_seq, indices mod n.
struct NCycleSpec {
  int n = 3;
  std::vector<int> signs;

  // +1 everywhere except the closing pair (n-1, 0).
  static NCycleSpec canonical(int n);
};

void validate(const NCycleSpec& spec);

CorrelationProblem ncycle(const NCycleSpec& spec);
Scenario ncycle_scenario(const NCycleSpec& spec);
double ncycle_bound(int n);

// Circulant W with -1 on the cyclic neighbours, so the all-minus n-cycle is
// (1/2) tr(W X).
MatrixXd cycle_matrix(int n);

struct Ray {
  std::string label;
  std::array<int, 3> v;
};
using RaySet = std::vector<Ray>;

RaySet yu_oh_rays();
// Pairs (i, j), i < j, with exactly orthogonal integer rays.
std::vector<std::pair<int, int>> orthogonality_edges(const RaySet& rays);

Scenario leggett_garg();
Scenario yu_oh();
Scenario gyni();

// builtin names: ncycleN (3 <= N <= 12), lg, yu-oh, gyni.
Scenario builtin_scenario(const std::string& name);
std::vector<std::string> builtin_names();

// Accepts "builtin:NAME" or a path to a scenario JSON file.
Scenario resolve_scenario(const std::string& spec);

Scenario parse_scenario(const std::string& text, const std::string& source = "<string>");
Scenario load_scenario(const std::string& path);
std::string dump_scenario(const Scenario& scenario);

// Pairwise-correlator scenario as a correlation-matrix program: each term
// c <A_i A_j>_seq adds c/2 to lambda_ij and lambda_ji.
CorrelationProblem correlation_problem(const Scenario& scenario);

}  // namespace tempora
