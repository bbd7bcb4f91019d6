#include "mrfmoves/io.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace mrfmoves {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
      ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos])))
      ++pos;
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  return tokens;
}

int to_int(std::string_view token, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
  return value;
}

double to_double(std::string_view token, int line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value))
    throw ParseError(line, "expected a finite number, got '" + std::string(token) + "'");
  return value;
}

}  // namespace

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

Instance parse_instance(std::istream& in) {
  std::string raw;
  int line_no = 0;
  bool have_header = false;
  int num_nodes = 0;
  int num_edges = 0;
  int num_states = 0;
  std::vector<double> unaries;
  std::vector<bool> unary_seen;
  int unary_count = 0;
  std::vector<Edge> edges;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::vector<std::string_view> tok = split(raw);
    if (tok.empty() || tok[0].front() == '#') continue;

    if (!have_header) {
      if (tok[0] != "mrf" || tok.size() != 4)
        throw ParseError(line_no, "expected header 'mrf <nodes> <edges> <states>'");
      num_nodes = to_int(tok[1], line_no);
      num_edges = to_int(tok[2], line_no);
      num_states = to_int(tok[3], line_no);
      if (num_nodes < 1 || num_edges < 0 || num_states < 1)
        throw ParseError(line_no, "header counts out of range");
      unaries.assign(static_cast<std::size_t>(num_nodes) * num_states, 0.0);
      unary_seen.assign(num_nodes, false);
      have_header = true;
      continue;
    }

    if (tok[0] == "unary") {
      if (tok.size() != static_cast<std::size_t>(num_states) + 2)
        throw ParseError(line_no, "unary line needs a node id and " +
                                      std::to_string(num_states) + " energies");
      const int node = to_int(tok[1], line_no);
      if (node < 0 || node >= num_nodes)
        throw ParseError(line_no, "node id out of range");
      if (unary_seen[node]) throw ParseError(line_no, "repeated unary for node");
      unary_seen[node] = true;
      ++unary_count;
      for (int s = 0; s < num_states; ++s)
        unaries[static_cast<std::size_t>(node) * num_states + s] =
            to_double(tok[2 + s], line_no);
    } else if (tok[0] == "edge") {
      const std::size_t cells = static_cast<std::size_t>(num_states) * num_states;
      if (tok.size() != cells + 3)
        throw ParseError(line_no, "edge line needs two node ids and " +
                                      std::to_string(cells) + " energies");
      if (static_cast<int>(edges.size()) == num_edges)
        throw ParseError(line_no, "more edges than the header declares");
      const int i = to_int(tok[1], line_no);
      const int j = to_int(tok[2], line_no);
      if (i < 0 || j >= num_nodes || i >= j)
        throw ParseError(line_no, "edge needs 0 <= i < j < num_nodes");
      std::vector<double> values(cells);
      for (std::size_t c = 0; c < cells; ++c) values[c] = to_double(tok[3 + c], line_no);
      edges.push_back({i, j, PairwiseTable(num_states, std::move(values))});
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(tok[0]) + "'");
    }
  }

  if (!have_header) throw ParseError(0, "missing 'mrf' header");
  if (unary_count != num_nodes)
    throw ParseError(0, "header declares " + std::to_string(num_nodes) +
                            " unary lines, found " + std::to_string(unary_count));
  if (static_cast<int>(edges.size()) != num_edges)
    throw ParseError(0, "header declares " + std::to_string(num_edges) +
                            " edges, found " + std::to_string(edges.size()));
  try {
    return Instance(num_nodes, num_states, std::move(unaries), std::move(edges));
  } catch (const InvalidInput& e) {
    throw ParseError(0, e.what());
  }
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::string serialize_instance(const Instance& inst) {
  std::string out = "mrf " + std::to_string(inst.num_nodes()) + " " +
                    std::to_string(inst.edges().size()) + " " +
                    std::to_string(inst.num_states()) + "\n";
  for (int i = 0; i < inst.num_nodes(); ++i) {
    out += "unary " + std::to_string(i);
    for (int s = 0; s < inst.num_states(); ++s) out += " " + format_number(inst.unary(i, s));
    out += "\n";
  }
  for (const Edge& e : inst.edges()) {
    out += "edge " + std::to_string(e.i) + " " + std::to_string(e.j);
    for (double v : e.table.values()) out += " " + format_number(v);
    out += "\n";
  }
  return out;
}

std::string instance_hash(const Instance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_instance(inst)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(h));
  return buf.data();
}

Labeling parse_labeling(std::istream& in) {
  Labeling x;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto tok = split(raw);
    if (tok.empty() || tok[0].front() == '#') continue;
    if (tok.size() != 1) throw ParseError(line_no, "expected one state per line");
    const int state = to_int(tok[0], line_no);
    if (state < 1) throw ParseError(line_no, "states are 1-based");
    x.push_back(state - 1);
  }
  return x;
}

std::string serialize_labeling(const Labeling& x) {
  std::string out;
  for (int s : x) out += std::to_string(s + 1) + "\n";
  return out;
}

StoredReport to_stored(const RunReport& r, const std::string& hash) {
  StoredReport s;
  s.method = r.method;
  s.seed = r.seed;
  s.instance_hash = hash;
  s.initial_energy = r.initial_energy;
  s.final_energy = r.final_energy;
  s.sweep_energies = r.sweep_energies;
  s.accepted_moves = r.accepted_moves();
  s.sweeps = r.sweeps;
  s.converged = r.converged;
  s.truncation_used = r.truncation_used;
  return s;
}

std::string report_to_json(const StoredReport& r) {
  nlohmann::ordered_json j;
  j["method"] = r.method;
  j["seed"] = r.seed;
  j["instance_hash"] = r.instance_hash;
  j["initial_energy"] = r.initial_energy;
  j["final_energy"] = r.final_energy;
  j["sweep_energies"] = r.sweep_energies;
  j["accepted_moves"] = r.accepted_moves;
  j["sweeps"] = r.sweeps;
  j["converged"] = r.converged;
  j["truncation_used"] = r.truncation_used;
  return j.dump(2) + "\n";
}

StoredReport report_from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    StoredReport r;
    r.method = j.at("method").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.instance_hash = j.at("instance_hash").get<std::string>();
    r.initial_energy = j.at("initial_energy").get<double>();
    r.final_energy = j.at("final_energy").get<double>();
    r.sweep_energies = j.at("sweep_energies").get<std::vector<double>>();
    r.accepted_moves = j.at("accepted_moves").get<int>();
    r.sweeps = j.value("sweeps", 0);
    r.converged = j.value("converged", false);
    r.truncation_used = j.at("truncation_used").get<bool>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("bad run report: ") + e.what());
  }
}

std::string labeling_pgm(const Labeling& x, int rows, int cols, int num_states) {
  if (rows < 1 || cols < 1 || static_cast<long>(rows) * cols != static_cast<long>(x.size()))
    throw InvalidInput("labeling has " + std::to_string(x.size()) +
                       " entries, image is " + std::to_string(rows) + "x" +
                       std::to_string(cols));
  if (num_states < 1) throw InvalidInput("need at least one state");
  std::string out = "P5\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n255\n";
  for (int s : x) {
    if (s < 0 || s >= num_states) throw InvalidInput("label out of range");
    const long gray = num_states == 1 ? 0 : std::lround(s * 255.0 / (num_states - 1));
    out.push_back(static_cast<char>(static_cast<unsigned char>(gray)));
  }
  return out;
}

}  // namespace mrfmoves
