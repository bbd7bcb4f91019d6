#include <sstream>

#include "doctest.h"
#include "mrfmoves/generators.hpp"
#include "mrfmoves/io.hpp"
#include "test_support.hpp"

using namespace mrfmoves;
using mrfmoves::testing::L;

TEST_CASE("minimal instance file") {
  const Instance inst = parse_instance(std::string("mrf 1 0 2\nunary 0 0 0\n"));
  CHECK(inst.num_nodes() == 1);
  CHECK(inst.num_states() == 2);
  CHECK(inst.edges().empty());
}

TEST_CASE("comments and blank lines are skipped") {
  const Instance inst = parse_instance(std::string(
      "# two nodes\nmrf 2 1 2\n\nunary 1 3 0\nunary 0 0 2\n# potts\nedge 0 1 0 1 1 0\n"));
  CHECK(inst == testing::instance_a());
}

TEST_CASE("round trip through the canonical text") {
  CHECK(parse_instance(serialize_instance(testing::instance_a())) == testing::instance_a());
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = random_small(seed, 6, 4, seed % 2 == 0);
    const std::string text = serialize_instance(inst);
    CHECK(parse_instance(text) == inst);
    CHECK(serialize_instance(parse_instance(text)) == text);
  }
  const Instance real = InstanceBuilder(1, 3).set_unary(0, {0.1, 1.0 / 3.0, -2.5e-7}).build();
  CHECK(parse_instance(serialize_instance(real)) == real);
  CHECK(serialize_instance(real) == "mrf 1 0 3\nunary 0 0.1 0.3333333333333333 -2.5e-07\n");
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_instance(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("mrf 2 2 2\nunary 0 0 0\nunary 1 0 0\nedge 0 1 0 1 1 0\n") == 0);
  CHECK(line_of("mrf 1 0 2\nunary 0 0 x\n") == 2);
  CHECK(line_of("mrf 1 0 2\nunary 0 0\n") == 2);
  CHECK(line_of("mrf 2 1 2\nunary 0 0 0\nunary 1 0 0\nedge 1 0 0 0 0 0\n") == 4);
  CHECK(line_of("mrf 1 0 2\nbogus 1\n") == 2);
  CHECK(line_of("hello\n") == 1);
  CHECK(line_of("") == 0);
  CHECK(line_of("mrf 1 0 2\nunary 0 0 inf\n") == 2);
}

TEST_CASE("instance hash") {
  const std::string h = instance_hash(testing::instance_a());
  CHECK(h.size() == 16);
  CHECK(h == instance_hash(parse_instance(serialize_instance(testing::instance_a()))));
  CHECK(h != instance_hash(testing::instance_b()));
}

TEST_CASE("labeling files are 1-based") {
  std::istringstream in("1\n2\n# trailing comment\n3\n");
  CHECK(parse_labeling(in) == L({1, 2, 3}));
  CHECK(serialize_labeling(L({2, 1})) == "2\n1\n");
  std::istringstream bad("0\n");
  CHECK_THROWS_AS(parse_labeling(bad), ParseError);
}

TEST_CASE("report JSON round trip") {
  StoredReport r;
  r.method = "expshrink-next";
  r.seed = 12345678901234ULL;
  r.instance_hash = "00ff00ff00ff00ff";
  r.initial_energy = 10.5;
  r.final_energy = 1.0 / 3.0;
  r.sweep_energies = {3.0, 1.0 / 3.0};
  r.accepted_moves = 7;
  r.sweeps = 2;
  r.converged = true;
  r.truncation_used = true;
  const StoredReport back = report_from_json(report_to_json(r));
  CHECK(back.method == r.method);
  CHECK(back.seed == r.seed);
  CHECK(back.instance_hash == r.instance_hash);
  CHECK(back.final_energy == r.final_energy);
  CHECK(back.sweep_energies == r.sweep_energies);
  CHECK(back.accepted_moves == 7);
  CHECK(back.truncation_used);
  CHECK_THROWS_AS(report_from_json("{\"method\": 1}"), ParseError);
  CHECK_THROWS_AS(report_from_json("not json"), ParseError);
}

TEST_CASE("PGM export") {
  const std::string img = labeling_pgm(L({1, 2, 3, 1, 2, 3}), 2, 3, 3);
  const std::string header = "P5\n3 2\n255\n";
  REQUIRE(img.size() == header.size() + 6);
  CHECK(img.substr(0, header.size()) == header);
  CHECK(static_cast<unsigned char>(img[header.size()]) == 0);
  CHECK(static_cast<unsigned char>(img[header.size() + 1]) == 128);
  CHECK(static_cast<unsigned char>(img[header.size() + 2]) == 255);
  CHECK_THROWS_AS(labeling_pgm(L({1, 2}), 2, 3, 3), InvalidInput);
}
