#pragma once

#include <optional>
#include <vector>

#include "core/solver.hpp"

namespace testutil {

struct EnumBest {
  double objective = 0.0;
  std::vector<int> placement;
};

// Brute force over every capacity-respecting complete assignment. Intended
// for tiny instances only (num_regions^num_jobs leaves).
inline std::optional<EnumBest> enumerate_best(const cwsched::AssignmentInstance& in) {
  std::optional<EnumBest> best;
  std::vector<int> used(in.num_regions, 0);
  std::vector<int> choice(in.num_jobs, -1);

  auto rec = [&](auto&& self, int job, double cost) -> void {
    if (job == in.num_jobs) {
      if (!best || cost < best->objective - 1e-15) {
        best = EnumBest{cost, choice};
      }
      return;
    }
    for (int r = 0; r < in.num_regions; ++r) {
      if (!in.allowed_at(job, r) || used[r] >= in.capacity[r]) continue;
      used[r] += 1;
      choice[job] = r;
      self(self, job + 1, cost + in.cost_at(job, r));
      used[r] -= 1;
      choice[job] = -1;
    }
  };
  rec(rec, 0, 0.0);
  return best;
}

}  // namespace testutil
