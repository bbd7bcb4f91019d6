#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mrfmoves/energy.hpp"
#include "mrfmoves/moves.hpp"

namespace mrfmoves {

enum class MethodKind {
  kSwap,             // beta = 1..N outer, alpha = beta+1..N inner
  kExpansion,        // alpha = 1..N
  kExpShrinkRandom,  // alpha = 1..N, beta drawn per move
  kExpShrinkPrev,    // beta = max(1, alpha - 1)
  kExpShrinkNext,    // beta = min(N, alpha + 1)
  kExpShrinkAll,     // beta = 1..N outer, alpha = 1..N inner
};

struct Method {
  MethodKind kind = MethodKind::kExpansion;
  std::uint64_t seed = 0;  // only read by kExpShrinkRandom
};

/// CLI name of a method ("swap", "expansion", "expshrink-random", ...).
std::string method_name(MethodKind kind);
std::optional<MethodKind> parse_method(const std::string& name);

struct RunOptions {
  int max_sweeps = 1000;
  double eps = kDefaultEps;
  /// nullopt: truncate exactly when some edge fails the triangle condition.
  std::optional<bool> truncation;
};

struct MoveLogEntry {
  MoveSpec spec;
  bool accepted = false;
  double energy_after = 0.0;
};

struct RunReport {
  std::string method;
  std::uint64_t seed = 0;
  double initial_energy = 0.0;
  std::vector<MoveLogEntry> moves;
  /// Energy at the end of each sweep.
  std::vector<double> sweep_energies;
  Labeling final_labeling;
  double final_energy = 0.0;
  int sweeps = 0;
  /// A full sweep passed without an accepted move.
  bool converged = false;
  bool truncation_used = false;

  int accepted_moves() const;
};

/// The moves of one sweep of `method` in execution order. The random-beta
/// variant draws from a generator seeded with method.seed.
class SweepPlanner {
 public:
  SweepPlanner(Method method, int num_states);
  std::vector<MoveSpec> next_sweep();

 private:
  Method method_;
  int num_states_;
  std::mt19937_64 rng_;
};

/// Sweeps `method` from `init` until a sweep accepts no move or max_sweeps
/// is reached.
RunReport run(const Instance& inst, std::span<const int> init,
              const Method& method, const RunOptions& options = {});

/// ICM sweeps over `node_order` (ascending when empty).
RunReport run_icm(const Instance& inst, std::span<const int> init,
                  std::vector<int> node_order = {},
                  const RunOptions& options = {});

/// All variables at the first state.
Labeling first_state_labeling(const Instance& inst);

struct RatioCell {
  std::string method;
  double energy = 0.0;
  std::string text;
};

/// Ratio of a final energy to a baseline: "1" when identical, otherwise the
/// ratio to four decimals (so near-identical energies print "1.0000"). A
/// zero baseline leaves ratios undefined and the absolute energy is printed.
std::string format_relative(double energy, double baseline);

std::vector<RatioCell> relative_energy_report(const std::vector<RunReport>& runs,
                                              const RunReport& baseline);

}  // namespace mrfmoves
