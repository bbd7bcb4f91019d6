#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mrfmoves/energy.hpp"
#include "mrfmoves/moves.hpp"

namespace mrfmoves {

// Exhaustive reference solvers. Everything here enumerates labelings
// directly from the move definitions and never touches the min-cut path.

class EnumerationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Parameter-free move sets: the union of one move type over all of its
/// parameters. SE is the union of S and E.
enum class MoveSetId { I, S, E, G, SE };

const char* to_string(MoveSetId id);

struct OracleResult {
  Labeling x;
  double energy = 0.0;
};

/// Global minimizer; lexicographically smallest among ties.
OracleResult brute_force_minimum(
    const Instance& inst, std::uint64_t cap = kDefaultEnumerationCap);

using LabelingSink = std::function<void(const Labeling&)>;

/// Calls `sink` once per element of the move space of `spec`.
void enumerate_moves(const Instance& inst, std::span<const int> x,
                     const MoveSpec& spec, const LabelingSink& sink,
                     std::uint64_t cap = kDefaultEnumerationCap);

/// Calls `sink` for every element of every parameterised move space in the
/// set; labelings reachable under several parameters repeat.
void enumerate_moves(const Instance& inst, std::span<const int> x,
                     MoveSetId id, const LabelingSink& sink,
                     std::uint64_t cap = kDefaultEnumerationCap);

/// Every parameter choice of a move type, in the order used by the unions.
std::vector<MoveSpec> move_specs(const Instance& inst, MoveSetId id);

/// Exact minimum over one move space; ties go to the lexicographically
/// smallest labeling.
OracleResult best_in_move_space(const Instance& inst, std::span<const int> x,
                                const MoveSpec& spec,
                                std::uint64_t cap = kDefaultEnumerationCap);

OracleResult best_in_move_set(const Instance& inst, std::span<const int> x,
                              MoveSetId id,
                              std::uint64_t cap = kDefaultEnumerationCap);

struct DominanceReport {
  bool leq = false;     // best(A) <= best(B) + eps
  bool strict = false;  // best(A) <  best(B) - eps
  double best_a = 0.0;
  double best_b = 0.0;
};

DominanceReport dominance_report(const Instance& inst, std::span<const int> x,
                                 MoveSetId a, MoveSetId b,
                                 double eps = kDefaultEps,
                                 std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace mrfmoves
