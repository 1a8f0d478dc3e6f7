#include "certiplan/assignment.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

namespace certiplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Kuhn's augmenting-path matching over a boolean edge mask, with an
// optional banned edge. Agents are scanned in index order, so the result
// is deterministic. Returns per-task matched agent, or num_agents for
// unmatched tasks.
std::vector<std::size_t> max_matching(const std::vector<bool>& mask,
                                      std::size_t na, std::size_t nt,
                                      std::size_t ban_agent = SIZE_MAX,
                                      std::size_t ban_task = SIZE_MAX) {
  std::vector<std::size_t> task_of_agent(na, nt);
  std::vector<std::size_t> agent_of_task(nt, na);
  std::vector<bool> visited(na);

  auto allowed = [&](std::size_t i, std::size_t j) {
    if (i == ban_agent && j == ban_task) return false;
    return mask[i * nt + j];
  };
  // Augment from task j: find an agent for it, displacing along
  // alternating paths.
  auto augment = [&](auto&& self, std::size_t j) -> bool {
    for (std::size_t i = 0; i < na; ++i) {
      if (!allowed(i, j) || visited[i]) continue;
      visited[i] = true;
      if (task_of_agent[i] == nt || self(self, task_of_agent[i])) {
        task_of_agent[i] = j;
        agent_of_task[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t j = 0; j < nt; ++j) {
    std::fill(visited.begin(), visited.end(), false);
    augment(augment, j);
  }
  return agent_of_task;
}

bool saturates(const std::vector<std::size_t>& agent_of_task, std::size_t na) {
  return std::all_of(agent_of_task.begin(), agent_of_task.end(),
                     [na](std::size_t a) { return a < na; });
}

std::vector<bool> mask_at_threshold(const WeightMatrix& w, double t) {
  std::vector<bool> mask(w.entries.size());
  for (std::size_t k = 0; k < w.entries.size(); ++k)
    mask[k] = std::isfinite(w.entries[k]) && w.entries[k] <= t;
  return mask;
}

}  // namespace

Assignment solve_bap(const WeightMatrix& w) {
  if (w.num_tasks == 0 || w.num_agents < w.num_tasks)
    throw AssignmentError("need at least as many agents as tasks");
  std::vector<double> levels;
  for (double v : w.entries)
    if (std::isfinite(v)) levels.push_back(v);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.empty()) throw AssignmentError("no finite weights");

  auto feasible = [&](double t) {
    return saturates(max_matching(mask_at_threshold(w, t), w.num_agents,
                                  w.num_tasks),
                     w.num_agents);
  };
  if (!feasible(levels.back()))
    throw AssignmentError("no task-saturating matching with finite weights");

  std::size_t lo = 0, hi = levels.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (feasible(levels[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  Assignment out;
  out.task_to_agent =
      max_matching(mask_at_threshold(w, levels[lo]), w.num_agents, w.num_tasks);
  double b = -kInf;
  for (std::size_t j = 0; j < w.num_tasks; ++j)
    b = std::max(b, w.at(out.task_to_agent[j], j));
  out.bottleneck_value = b;
  return out;
}

bool exists_alternative_matching(const std::vector<bool>& mask,
                                 std::size_t num_agents, std::size_t num_tasks,
                                 const Assignment& pi) {
  // Any alternative saturating matching must omit at least one pi edge,
  // so it exists iff the mask still saturates after banning some pi edge.
  for (std::size_t j = 0; j < num_tasks; ++j) {
    auto m = max_matching(mask, num_agents, num_tasks, pi.task_to_agent[j], j);
    if (saturates(m, num_agents)) return true;
  }
  return false;
}

double critical_threshold(const WeightMatrix& w, const Assignment& pi) {
  std::vector<double> levels;
  for (std::size_t i = 0; i < w.num_agents; ++i) {
    for (std::size_t j = 0; j < w.num_tasks; ++j) {
      if (!pi.assigns(i, j) && std::isfinite(w.at(i, j)))
        levels.push_back(w.at(i, j));
    }
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  auto mask_for = [&](double t) {
    std::vector<bool> mask(w.entries.size(), false);
    for (std::size_t i = 0; i < w.num_agents; ++i) {
      for (std::size_t j = 0; j < w.num_tasks; ++j) {
        if (pi.assigns(i, j))
          mask[i * w.num_tasks + j] = true;
        else if (std::isfinite(w.at(i, j)) && w.at(i, j) <= t)
          mask[i * w.num_tasks + j] = true;
      }
    }
    return mask;
  };
  auto has_alt = [&](double t) {
    return exists_alternative_matching(mask_for(t), w.num_agents, w.num_tasks,
                                       pi);
  };
  if (levels.empty() || !has_alt(levels.back())) return kInf;
  std::size_t lo = 0, hi = levels.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (has_alt(levels[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return levels[lo];
}

IntervalFamily allowable_intervals(const WeightMatrix& w, const Assignment& pi) {
  double bstar = -kInf;
  for (std::size_t j = 0; j < w.num_tasks; ++j)
    bstar = std::max(bstar, w.at(pi.task_to_agent[j], j));
  if (solve_bap(w).bottleneck_value != bstar)
    throw AssignmentError("assignment is not bottleneck-optimal for the weights");

  double t = critical_threshold(w, pi);
  IntervalFamily lam;
  lam.num_agents = w.num_agents;
  lam.num_tasks = w.num_tasks;
  lam.lambda_down.assign(w.entries.size(), kInf);
  lam.lambda_up.assign(w.entries.size(), kInf);

  for (std::size_t i = 0; i < w.num_agents; ++i) {
    for (std::size_t j = 0; j < w.num_tasks; ++j) {
      std::size_t k = lam.idx(i, j);
      double wij = w.at(i, j);
      if (std::isinf(wij)) {
        // Absent edge: pin it. Leaving it free would let an alternative
        // matching exploit a pair whose true weight is simply unknown.
        lam.lambda_down[k] = 0.0;
        lam.lambda_up[k] = 0.0;
        continue;
      }
      if (t >= bstar) {
        // Cap the assignment at theta, halfway between b* and T; every
        // alternative matching keeps an off-assignment pair of weight
        // >= T which is floored at theta, so it can never drop below the
        // cap. Splitting the slack leaves positive margin on both sides.
        double theta = std::isinf(t) ? kInf : 0.5 * (bstar + t);
        if (pi.assigns(i, j)) {
          lam.lambda_up[k] = theta - wij;  // range (-inf, theta]
        } else if (wij >= t) {
          lam.lambda_down[k] = wij - theta;  // range [theta, inf)
        }
        // off-assignment below T: unconstrained
      } else {
        if (pi.assigns(i, j)) {
          if (wij < bstar) {
            lam.lambda_up[k] = bstar - wij;  // range (-inf, b*]
          } else {
            lam.lambda_down[k] = 0.0;  // frozen at the bottleneck
            lam.lambda_up[k] = 0.0;
          }
        } else if (wij >= bstar) {
          lam.lambda_down[k] = wij - bstar;  // range [b*, inf)
        }
      }
    }
  }
  return lam;
}

bool certificate_check(const std::vector<double>& lower,
                       const std::vector<double>& upper, const WeightMatrix& w,
                       const IntervalFamily& lam) {
  for (std::size_t k = 0; k < w.entries.size(); ++k) {
    if (std::isinf(upper[k])) {
      if (!(std::isinf(lam.lambda_up[k]) && std::isinf(lam.lambda_down[k])))
        return false;
      continue;
    }
    double half = 0.5 * (upper[k] - lower[k]);
    if (!(half <= lam.lambda_up[k]) || !(half <= lam.lambda_down[k]))
      return false;
  }
  return true;
}

bool direct_certificate(const std::vector<double>& lower,
                        const std::vector<double>& upper, std::size_t num_agents,
                        std::size_t num_tasks, const Assignment& pi) {
  double max_assigned_u = -kInf;
  for (std::size_t j = 0; j < num_tasks; ++j)
    max_assigned_u =
        std::max(max_assigned_u, upper[pi.task_to_agent[j] * num_tasks + j]);
  std::vector<bool> mask(num_agents * num_tasks, false);
  for (std::size_t i = 0; i < num_agents; ++i) {
    for (std::size_t j = 0; j < num_tasks; ++j) {
      if (pi.assigns(i, j) || lower[i * num_tasks + j] < max_assigned_u)
        mask[i * num_tasks + j] = true;
    }
  }
  return !exists_alternative_matching(mask, num_agents, num_tasks, pi);
}

namespace {

// All task-saturating injections tasks -> agents.
void enumerate_matchings(std::size_t na, std::size_t nt,
                         std::vector<std::size_t>& cur, std::vector<bool>& used,
                         const std::function<void(const std::vector<std::size_t>&)>& cb) {
  std::size_t j = cur.size();
  if (j == nt) {
    cb(cur);
    return;
  }
  for (std::size_t i = 0; i < na; ++i) {
    if (used[i]) continue;
    used[i] = true;
    cur.push_back(i);
    enumerate_matchings(na, nt, cur, used, cb);
    cur.pop_back();
    used[i] = false;
  }
}

double bottleneck_of(const std::vector<std::size_t>& m, const WeightMatrix& w) {
  double b = -kInf;
  for (std::size_t j = 0; j < m.size(); ++j) b = std::max(b, w.at(m[j], j));
  return b;
}

}  // namespace

bool brute_force_allowability(const WeightMatrix& w, const Assignment& pi,
                              const IntervalFamily& lam) {
  if (w.num_agents > 5)
    throw AssignmentError("brute-force allowability refuses instances above 5 agents");
  constexpr double kBig = 1e9;
  bool ok = true;
  std::vector<std::size_t> cur;
  std::vector<bool> used(w.num_agents, false);
  enumerate_matchings(
      w.num_agents, w.num_tasks, cur, used,
      [&](const std::vector<std::size_t>& alt) {
        if (!ok || alt == pi.task_to_agent) return;
        // Only pairs in pi or alt affect the two bottlenecks.
        std::vector<std::size_t> coords;
        for (std::size_t j = 0; j < w.num_tasks; ++j) {
          coords.push_back(pi.task_to_agent[j] * w.num_tasks + j);
          coords.push_back(alt[j] * w.num_tasks + j);
        }
        std::sort(coords.begin(), coords.end());
        coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
        std::size_t corners = std::size_t{1} << coords.size();
        for (std::size_t c = 0; c < corners && ok; ++c) {
          WeightMatrix wp = w;
          for (std::size_t b = 0; b < coords.size(); ++b) {
            std::size_t k = coords[b];
            double v = (c >> b) & 1
                           ? std::min(lam.lambda_up[k], kBig)
                           : -std::min(lam.lambda_down[k], kBig);
            wp.entries[k] += v;
          }
          // Ties are fine; corner endpoints are reconstructed as w + lambda,
          // which can miss an exact tie by one ulp, hence the tolerance.
          double ba = bottleneck_of(alt, wp);
          double bp = bottleneck_of(pi.task_to_agent, wp);
          if (ba < bp - 1e-9 * std::max(1.0, std::abs(bp))) ok = false;
        }
      });
  return ok;
}

}  // namespace certiplan
