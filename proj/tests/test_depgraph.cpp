#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "sdplstm/depgraph.hpp"
#include "sdplstm/error.hpp"
#include "sdplstm/rng.hpp"

using namespace sdplstm;

namespace {

std::vector<std::string> words(const std::vector<TaggedToken>& tt) {
  std::vector<std::string> out;
  for (const auto& t : tt) out.push_back(t.token);
  return out;
}

SentenceRecord blank(std::size_t n) {
  SentenceRecord s;
  s.id = "g";
  for (std::size_t i = 0; i < n; ++i) {
    s.tokens.push_back("w" + std::to_string(i));
    s.pos_tags.push_back("NN");
  }
  return s;
}

}  // namespace

TEST_CASE("bind sentence path") {
  auto s = fixtures::bind_sentence();
  auto g = build_graph(s, fixtures::bind_edges());
  auto path = shortest_path(g, 0, 9);
  CHECK(path.node_indices == std::vector<std::size_t>{0, 4, 5, 7, 8, 9});
  CHECK(words(sdp_tokens(path, s)) ==
        std::vector<std::string>{"Prot1", "bind", "with", "surface", "of", "Prot2"});
  CHECK(path.length() == 5);
}

TEST_CASE("chain graph") {
  auto s = blank(4);
  auto g = build_graph(s, fixtures::edges({{0, 1}, {1, 2}, {2, 3}}));
  CHECK(shortest_path(g, 0, 3).node_indices == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(shortest_path(g, 3, 0).node_indices == std::vector<std::size_t>{3, 2, 1, 0});
}

TEST_CASE("adjacent nodes give a two-node path") {
  auto s = blank(3);
  auto g = build_graph(s, fixtures::edges({{2, 0}}));
  CHECK(shortest_path(g, 0, 2).node_indices == std::vector<std::size_t>{0, 2});
}

TEST_CASE("ties go to the lexicographically smallest path") {
  // Square 0-1-3, 0-2-3: both length 2.
  auto s = blank(4);
  auto g = build_graph(s, fixtures::edges({{0, 2}, {2, 3}, {0, 1}, {1, 3}}));
  CHECK(shortest_path(g, 0, 3).node_indices == std::vector<std::size_t>{0, 1, 3});
  CHECK(shortest_path(g, 3, 0).node_indices == std::vector<std::size_t>{3, 1, 0});
}

TEST_CASE("graph errors") {
  auto s = blank(4);
  CHECK_THROWS_AS(build_graph(s, fixtures::edges({{0, 4}})), IndexOutOfRange);
  CHECK_THROWS_AS(build_graph(s, fixtures::edges({{2, 2}})), SelfLoop);
  auto g = build_graph(s, fixtures::edges({{0, 1}, {2, 3}}));
  CHECK_THROWS_AS(shortest_path(g, 0, 3), Disconnected);
  CHECK_THROWS_AS(shortest_path(g, 0, 0), InputError);
  CHECK_THROWS_AS(shortest_path(g, 0, 9), IndexOutOfRange);
}

TEST_CASE("duplicate edges collapse") {
  auto s = blank(3);
  auto g = build_graph(s, fixtures::edges({{0, 1}, {1, 0}, {0, 1}, {1, 2}}));
  CHECK(g.edges().size() == 2);
  CHECK(g.neighbors(1) == std::vector<std::size_t>{0, 2});
}

TEST_CASE("path length cap") {
  auto s = blank(45);
  std::vector<std::pair<std::size_t, std::size_t>> chain;
  for (std::size_t i = 0; i + 1 < 45; ++i) chain.emplace_back(i, i + 1);
  auto g = build_graph(s, fixtures::edges(chain));
  CHECK(shortest_path(g, 0, 39).node_indices.size() == 40);
  CHECK_THROWS_AS(shortest_path(g, 0, 40), PathTooLong);
  CHECK_NOTHROW(shortest_path(g, 0, 44, 45));
}

TEST_CASE("regulator sentence has a unique shortest path") {
  auto s = fixtures::regulator_sentence();
  auto es = fixtures::regulator_edges();
  auto mins = fixtures::minimal_paths(fixtures::adjacency(s.tokens.size(), es), 6, 9);
  REQUIRE(mins.size() == 1);
  auto g = build_graph(s, es);
  auto path = shortest_path(g, 6, 9);
  CHECK(path.node_indices == mins[0]);
  CHECK(words(sdp_tokens(path, s)) ==
        std::vector<std::string>{"Prot1", "regulator", "between", "Interaction", "and",
                                 "repression", "Prot2"});
}

TEST_CASE("random graphs agree with exhaustive search") {
  Rng rng(20240611);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.index(8);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t v = 1; v < n; ++v) pairs.emplace_back(rng.index(v), v);
    const std::size_t extra = rng.index(n + 1);
    for (std::size_t e = 0; e < extra; ++e) {
      std::size_t a = rng.index(n), b = rng.index(n);
      if (a != b) pairs.emplace_back(a, b);
    }
    auto es = fixtures::edges(pairs);
    auto s = blank(n);
    auto g = build_graph(s, es);
    std::size_t src = rng.index(n), dst = rng.index(n);
    if (src == dst) dst = (dst + 1) % n;
    auto mins = fixtures::minimal_paths(fixtures::adjacency(n, es), src, dst);
    auto path = shortest_path(g, src, dst);
    CHECK(path.node_indices == mins.front());
  }
}

TEST_CASE("dependency file round trip and errors") {
  std::istringstream in("s1\t1\t0\tnsubj\n\ns1\t1\t2\tdobj\ns2\t0\t1\tdep\n");
  auto idx = parse_dependencies(in);
  REQUIRE(idx.size() == 2);
  CHECK(idx["s1"].size() == 2);
  CHECK(idx["s1"][0].relation == "nsubj");
  std::ostringstream out;
  write_dependencies(out, idx);
  std::istringstream back(out.str());
  CHECK(parse_dependencies(back) == idx);

  std::istringstream bad("s1\t1\t0\n");
  CHECK_THROWS_AS(parse_dependencies(bad), ParseError);
  std::istringstream neg("s1\t-1\t0\tdep\n");
  CHECK_THROWS_AS(parse_dependencies(neg), ParseError);
  CHECK_THROWS_AS(load_dependencies("/nonexistent/deps.tsv"), FileNotFound);
}
