#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mrfmoves/energy.hpp"
#include "mrfmoves/mincut.hpp"

namespace mrfmoves {

/// Replace the label of one node by any state.
struct IcmMove {
  int node;
};
/// Nodes labeled alpha or beta may trade between the two.
struct SwapMove {
  int alpha;
  int beta;
};
/// Any node may switch to alpha.
struct ExpansionMove {
  int alpha;
};
/// Any node may switch to alpha; nodes labeled alpha may switch to beta.
/// beta == alpha is allowed and behaves as ExpansionMove{alpha}.
struct ExpShrinkMove {
  int alpha;
  int beta;
};

using MoveSpec = std::variant<IcmMove, SwapMove, ExpansionMove, ExpShrinkMove>;

/// Throws InvalidInput if states/node are out of range or a swap has
/// alpha == beta.
void validate_move(const MoveSpec& spec, const Instance& inst);

/// Human-readable form with 1-based states, e.g. "expshrink(3,4)".
std::string to_string(const MoveSpec& spec);

/// Number of labelings in the move space, saturating at UINT64_MAX.
std::uint64_t move_space_size(const MoveSpec& spec, std::span<const int> x,
                              const Instance& inst);

/// Binary subproblem of a two-option move. Variable k stands for instance
/// node nodes[k] and picks between states[k][0] and states[k][1]. Option 1
/// is always alpha (beta for swaps), so the alpha-labeled nodes of an
/// expansion-shrink move keep their label with option 1.
struct Subproblem {
  BinaryProblem problem;
  std::vector<int> nodes;
  std::vector<std::array<int, 2>> states;
  /// Instance edge behind each binary edge.
  std::vector<int> source_edge;
  /// Number of instance edges whose table was altered by truncation.
  int truncated_edges = 0;

  /// The labeling obtained from `x` by applying the option vector.
  Labeling apply(std::span<const int> x, const std::vector<int>& options) const;
};

/// Reduces a swap, expansion or expansion-shrink move to a binary problem
/// whose energy (constant included) equals the total energy of the
/// corresponding labeling. Swap and expansion fold frozen nodes into the
/// constant and unaries; expansion-shrink keeps every node as a variable.
/// With `truncate_tables`, pairwise lookups go through truncate().
Subproblem build_subproblem(const Instance& inst, std::span<const int> x,
                            const MoveSpec& spec, bool truncate_tables = false,
                            double eps = kDefaultEps);

/// Single-entry replacement in one edge table.
struct TableOverride {
  int a;
  int b;
  double value;
};

/// Per-edge truncation for the move `spec` at labeling `x`; nullopt where the
/// edge already yields a submodular binary term. Expansion and
/// expansion-shrink use the lowering/raising construction keyed on whether
/// each endpoint is labeled alpha. Swap edges raise the off-diagonal entry
/// that differs from the current pair. ICM throws InvalidInput.
std::vector<std::optional<TableOverride>> truncation_overrides(
    const Instance& inst, std::span<const int> x, const MoveSpec& spec,
    double eps = kDefaultEps);

/// Move-local copies of every edge table with truncation applied. Tables
/// that need no change are returned untouched.
std::vector<PairwiseTable> truncate(const Instance& inst,
                                    std::span<const int> x,
                                    const MoveSpec& spec,
                                    double eps = kDefaultEps);

struct MoveResult {
  Labeling y;
  double energy = 0.0;
  bool changed = false;
  bool truncated = false;
};

/// Best labeling in the move space of `spec`, never worse than `x`. A move
/// that does not beat total_energy(x) by more than eps returns x itself.
/// Without `allow_truncation` a non-submodular binary edge throws
/// SubmodularityError.
MoveResult optimal_move(const Instance& inst, std::span<const int> x,
                        const MoveSpec& spec, bool allow_truncation = false,
                        double eps = kDefaultEps);

}  // namespace mrfmoves
