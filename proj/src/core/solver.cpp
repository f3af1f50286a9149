#include "core/solver.hpp"

#include <deque>
#include <limits>

#include "core/error.hpp"

namespace cwsched {

namespace {

// Nudge that orders equal-cost optima by region index without disturbing real
// cost differences (objective is recomputed from unperturbed costs anyway).
constexpr double kTieNudge = 1e-12;

struct Arc {
  int to;
  int rev;  // index of the reverse arc in arcs[to]
  int cap;
  double cost;
};

class FlowGraph {
 public:
  explicit FlowGraph(int nodes) : arcs_(nodes) {}

  void add(int from, int to, int cap, double cost) {
    arcs_[from].push_back({to, static_cast<int>(arcs_[to].size()), cap, cost});
    arcs_[to].push_back({from, static_cast<int>(arcs_[from].size()) - 1, 0, -cost});
  }

  // One unit of flow along a cheapest residual path (SPFA handles the
  // negative reverse costs). Returns false when the sink is unreachable.
  bool augment_unit(int src, int sink) {
    const double inf = std::numeric_limits<double>::infinity();
    int n = static_cast<int>(arcs_.size());
    std::vector<double> dist(n, inf);
    std::vector<int> prev_node(n, -1), prev_arc(n, -1);
    std::vector<char> queued(n, 0);
    std::deque<int> q;
    dist[src] = 0.0;
    q.push_back(src);
    queued[src] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      queued[u] = 0;
      for (int i = 0; i < static_cast<int>(arcs_[u].size()); ++i) {
        const Arc& a = arcs_[u][i];
        if (a.cap <= 0) continue;
        double nd = dist[u] + a.cost;
        if (nd < dist[a.to]) {
          dist[a.to] = nd;
          prev_node[a.to] = u;
          prev_arc[a.to] = i;
          if (!queued[a.to]) {
            q.push_back(a.to);
            queued[a.to] = 1;
          }
        }
      }
    }
    if (prev_node[sink] < 0 && sink != src) return false;
    for (int v = sink; v != src; v = prev_node[v]) {
      Arc& a = arcs_[prev_node[v]][prev_arc[v]];
      a.cap -= 1;
      arcs_[v][a.rev].cap += 1;
    }
    return true;
  }

  const std::vector<Arc>& out(int node) const { return arcs_[node]; }

 private:
  std::vector<std::vector<Arc>> arcs_;
};

}  // namespace

std::optional<AssignmentResult> solve_assignment(const AssignmentInstance& in) {
  int m = in.num_jobs, n = in.num_regions;
  if (m < 0 || n < 0) throw InputError("negative problem dimensions");
  if (in.cost.size() != static_cast<std::size_t>(m) * n ||
      in.allowed.size() != in.cost.size() ||
      in.capacity.size() != static_cast<std::size_t>(n))
    throw InputError("assignment instance shape mismatch");

  AssignmentResult res;
  res.region_of.assign(m, -1);
  if (m == 0) return res;

  long long total_cap = 0;
  for (int r = 0; r < n; ++r) {
    if (in.capacity[r] < 0) throw InputError("negative region capacity");
    total_cap += in.capacity[r];
  }
  if (total_cap < m) return std::nullopt;

  int src = 0, sink = 1 + m + n;
  FlowGraph g(2 + m + n);
  for (int j = 0; j < m; ++j) g.add(src, 1 + j, 1, 0.0);
  for (int j = 0; j < m; ++j)
    for (int r = 0; r < n; ++r)
      if (in.allowed_at(j, r))
        g.add(1 + j, 1 + m + r, 1, in.cost_at(j, r) + kTieNudge * r);
  for (int r = 0; r < n; ++r)
    if (in.capacity[r] > 0) g.add(1 + m + r, sink, in.capacity[r], 0.0);

  for (int j = 0; j < m; ++j)
    if (!g.augment_unit(src, sink)) return std::nullopt;

  for (int j = 0; j < m; ++j) {
    for (const Arc& a : g.out(1 + j)) {
      if (a.to >= 1 + m && a.to < 1 + m + n && a.cap == 0) {
        res.region_of[j] = a.to - 1 - m;
        break;
      }
    }
    if (res.region_of[j] < 0) throw RunError("solver left a job unassigned");
    res.objective += in.cost_at(j, res.region_of[j]);
  }
  return res;
}

}  // namespace cwsched
