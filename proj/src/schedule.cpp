#include "mrfmoves/schedule.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <numeric>
#include <utility>

namespace mrfmoves {

namespace {

constexpr std::array<std::pair<MethodKind, const char*>, 6> kMethodNames{{
    {MethodKind::kSwap, "swap"},
    {MethodKind::kExpansion, "expansion"},
    {MethodKind::kExpShrinkRandom, "expshrink-random"},
    {MethodKind::kExpShrinkPrev, "expshrink-prev"},
    {MethodKind::kExpShrinkNext, "expshrink-next"},
    {MethodKind::kExpShrinkAll, "expshrink-all"},
}};

std::string shortest(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

template <class MoveFn>
RunReport sweep_loop(const Instance& inst, std::span<const int> init,
                     const RunOptions& options, MoveFn&& next_sweep) {
  inst.require_valid_labeling(init);
  if (options.max_sweeps < 1) throw InvalidInput("max_sweeps must be >= 1");

  RunReport report;
  report.truncation_used =
      options.truncation.value_or(!satisfies_triangle(inst, options.eps));
  Labeling x(init.begin(), init.end());
  double energy = total_energy(inst, x);
  report.initial_energy = energy;

  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    bool accepted = false;
    for (const MoveSpec& spec : next_sweep()) {
      MoveResult r = optimal_move(inst, x, spec, report.truncation_used,
                                  options.eps);
      if (r.changed) {
        x = std::move(r.y);
        energy = r.energy;
        accepted = true;
      }
      report.moves.push_back({spec, r.changed, energy});
    }
    report.sweep_energies.push_back(energy);
    report.sweeps = sweep;
    if (!accepted) {
      report.converged = true;
      break;
    }
  }
  report.final_labeling = std::move(x);
  report.final_energy = energy;
  return report;
}

}  // namespace

std::string method_name(MethodKind kind) {
  for (auto [k, name] : kMethodNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<MethodKind> parse_method(const std::string& name) {
  for (auto [k, n] : kMethodNames)
    if (name == n) return k;
  return std::nullopt;
}

int RunReport::accepted_moves() const {
  return static_cast<int>(std::count_if(
      moves.begin(), moves.end(), [](const MoveLogEntry& m) { return m.accepted; }));
}

SweepPlanner::SweepPlanner(Method method, int num_states)
    : method_(method), num_states_(num_states), rng_(method.seed) {}

std::vector<MoveSpec> SweepPlanner::next_sweep() {
  const int n = num_states_;
  std::vector<MoveSpec> specs;
  switch (method_.kind) {
    case MethodKind::kSwap:
      for (int b = 0; b < n; ++b)
        for (int a = b + 1; a < n; ++a) specs.push_back(SwapMove{a, b});
      break;
    case MethodKind::kExpansion:
      for (int a = 0; a < n; ++a) specs.push_back(ExpansionMove{a});
      break;
    case MethodKind::kExpShrinkRandom:
      for (int a = 0; a < n; ++a) {
        int b = a;
        if (n > 1) {
          // Uniform over the other n - 1 states.
          b = std::uniform_int_distribution<int>(0, n - 2)(rng_);
          if (b >= a) ++b;
        }
        specs.push_back(ExpShrinkMove{a, b});
      }
      break;
    case MethodKind::kExpShrinkPrev:
      for (int a = 0; a < n; ++a) specs.push_back(ExpShrinkMove{a, std::max(0, a - 1)});
      break;
    case MethodKind::kExpShrinkNext:
      for (int a = 0; a < n; ++a)
        specs.push_back(ExpShrinkMove{a, std::min(n - 1, a + 1)});
      break;
    case MethodKind::kExpShrinkAll:
      for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) specs.push_back(ExpShrinkMove{a, b});
      break;
  }
  return specs;
}

RunReport run(const Instance& inst, std::span<const int> init,
              const Method& method, const RunOptions& options) {
  SweepPlanner planner(method, inst.num_states());
  RunReport report =
      sweep_loop(inst, init, options, [&] { return planner.next_sweep(); });
  report.method = method_name(method.kind);
  report.seed = method.seed;
  return report;
}

RunReport run_icm(const Instance& inst, std::span<const int> init,
                  std::vector<int> node_order, const RunOptions& options) {
  if (node_order.empty()) {
    node_order.resize(inst.num_nodes());
    std::iota(node_order.begin(), node_order.end(), 0);
  }
  for (int j : node_order)
    if (j < 0 || j >= inst.num_nodes()) throw InvalidInput("node order out of range");
  std::vector<MoveSpec> sweep;
  for (int j : node_order) sweep.push_back(IcmMove{j});
  RunOptions icm_options = options;
  icm_options.truncation = false;  // ICM never builds a binary subproblem
  RunReport report = sweep_loop(inst, init, icm_options, [&] { return sweep; });
  report.method = "icm";
  return report;
}

Labeling first_state_labeling(const Instance& inst) {
  return Labeling(inst.num_nodes(), 0);
}

std::string format_relative(double energy, double baseline) {
  if (baseline == 0.0) return shortest(energy);
  if (energy == baseline) return "1";
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.4f", energy / baseline);
  return buf.data();
}

std::vector<RatioCell> relative_energy_report(const std::vector<RunReport>& runs,
                                              const RunReport& baseline) {
  std::vector<RatioCell> cells;
  cells.reserve(runs.size());
  for (const RunReport& r : runs)
    cells.push_back({r.method, r.final_energy,
                     format_relative(r.final_energy, baseline.final_energy)});
  return cells;
}

}  // namespace mrfmoves
