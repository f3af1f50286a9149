#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace cwsched {

// Complete assignment of jobs to regions with per-region capacities.
struct AssignmentInstance {
  int num_jobs = 0;
  int num_regions = 0;
  std::vector<double> cost;           // num_jobs x num_regions, row-major
  std::vector<std::uint8_t> allowed;  // same shape; 0 forbids the pair
  std::vector<int> capacity;          // per region

  double cost_at(int job, int region) const {
    return cost[static_cast<std::size_t>(job) * num_regions + region];
  }
  bool allowed_at(int job, int region) const {
    return allowed[static_cast<std::size_t>(job) * num_regions + region] != 0;
  }
};

struct AssignmentResult {
  std::vector<int> region_of;  // per job
  double objective = 0.0;      // sum of input costs over the assignment
};

// Exact minimum-cost assignment placing every job, or nullopt when no
// capacity-respecting complete assignment exists. Equal-cost optima resolve
// toward lower region indices, then lower job indices; identical inputs give
// identical results.
std::optional<AssignmentResult> solve_assignment(const AssignmentInstance& in);

}  // namespace cwsched
