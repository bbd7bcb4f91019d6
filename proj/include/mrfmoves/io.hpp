#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrfmoves/energy.hpp"
#include "mrfmoves/schedule.hpp"

namespace mrfmoves {

/// Malformed input text. line() is 1-based; 0 means end of file.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error((line > 0 ? "line " + std::to_string(line)
                                     : std::string("end of file")) +
                           ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Instance text format:
//   mrf <num_nodes> <num_edges> <num_states>
//   unary <node> <E(1)> ... <E(N)>                  (num_nodes lines)
//   edge <i> <j> <E(1,1)> <E(1,2)> ... <E(N,N)>     (num_edges lines, i < j)
// Node ids are 0-based, states 1-based. Lines starting with '#' are comments.
Instance parse_instance(std::istream& in);
Instance parse_instance(const std::string& text);

/// Canonical text: single spaces, shortest round-trip decimals.
std::string serialize_instance(const Instance& inst);

/// 64-bit FNV-1a of the canonical text, as 16 hex digits.
std::string instance_hash(const Instance& inst);

/// Shortest decimal that parses back to the same double.
std::string format_number(double v);

/// One 1-based state per line; returns 0-based labels.
Labeling parse_labeling(std::istream& in);
std::string serialize_labeling(const Labeling& x);

/// The fields a run report file carries.
struct StoredReport {
  std::string method;
  std::uint64_t seed = 0;
  std::string instance_hash;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  std::vector<double> sweep_energies;
  int accepted_moves = 0;
  int sweeps = 0;
  bool converged = false;
  bool truncation_used = false;
};

StoredReport to_stored(const RunReport& report, const std::string& hash);
std::string report_to_json(const StoredReport& report);
/// Throws ParseError on malformed JSON or missing fields.
StoredReport report_from_json(const std::string& text);

/// Binary PGM (P5). State k (1-based) maps to gray round((k-1)*255/(N-1)).
std::string labeling_pgm(const Labeling& x, int rows, int cols, int num_states);

}  // namespace mrfmoves
