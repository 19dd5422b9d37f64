#pragma once

#include <cstdint>
#include <vector>

#include "tempora/scenario.hpp"

namespace tempora {

// One outcome per setting, independent of when it is measured.
struct DeterministicAssignment {
  std::vector<int> outcomes;
};

double evaluate_assignment(const Scenario& scenario, const DeterministicAssignment& a);

// Exact maximum over all deterministic noncontextual assignments.
double nchv_bound(const Scenario& scenario, std::uint64_t cap = std::uint64_t{1} << 24);

// Exact maximum over deterministic strategies whose outcome may depend on the
// full measurement history (settings and outcomes so far). Solved by dynamic
// programming over the history tree; `node_cap` bounds the visited nodes.
double algebraic_max(const Scenario& scenario, std::uint64_t node_cap = std::uint64_t{1} << 22);

}  // namespace tempora
