#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <zlib.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sdplstm/embed.hpp"
#include "sdplstm/error.hpp"

using namespace sdplstm;

namespace {

const char* kSmall =
    "3 4\n"
    "bind 0.1 0.2 0.3 0.4\n"
    "Protein -1 -2 -3 -4\n"
    "protein 5 6 7 8\n";

EmbeddingTable parse(const std::string& text, std::uint64_t seed = kDefaultOovSeed) {
  std::istringstream in(text);
  return parse_embeddings(in, seed);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sdplstm_embed_" + name);
}

}  // namespace

TEST_CASE("parse word2vec text") {
  auto t = parse(kSmall);
  CHECK(t.dimension() == 4);
  CHECK(t.size() == 3);
  CHECK(t.lookup("bind")[2] == doctest::Approx(0.3));
  CHECK(t.lookup("Protein")[0] == -1.0);
}

TEST_CASE("lookup falls back to lowercase, then to a hashed vector") {
  auto t = parse(kSmall);
  CHECK(t.lookup("BIND") == t.lookup("bind"));
  CHECK(t.lookup("PROTEIN") == t.lookup("protein"));
  auto oov = t.lookup("kinase");
  REQUIRE(oov.size() == 4);
  CHECK(oov.cwiseAbs().maxCoeff() <= kOovRange);
  CHECK(t.lookup("kinase") == oov);
  CHECK(parse(kSmall).lookup("kinase") == oov);
  CHECK(t.lookup("phosphatase") != oov);
  CHECK(parse(kSmall, 42).lookup("kinase") != oov);
}

TEST_CASE("empty table gives hashed vectors of the requested size") {
  EmbeddingTable t(200);
  auto v = t.lookup("PROT1");
  CHECK(v.size() == 200);
  CHECK(v.cwiseAbs().maxCoeff() <= kOovRange);
  CHECK(v.cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("duplicate rows keep the first vector") {
  auto t = parse("2 2\nx 1 1\nx 2 2\n");
  CHECK(t.size() == 1);
  CHECK(t.duplicate_count() == 1);
  CHECK(t.lookup("x")[0] == 1.0);
}

TEST_CASE("malformed embedding files") {
  CHECK_THROWS_AS(parse("x 1 1\n"), FormatError);
  CHECK_THROWS_AS(parse("1 3\nx 1 1\n"), DimensionMismatch);
  CHECK_THROWS_AS(parse("1 2\nx 1 nan\n"), FormatError);
  CHECK_THROWS_AS(parse("2 2\nx 1 1\n"), FormatError);
  CHECK_THROWS_AS(load_embeddings("/nonexistent/vectors.txt"), FileNotFound);
}

TEST_CASE("plain and gzip files load identically") {
  auto plain = temp_file("plain.txt");
  auto gz = temp_file("vectors.txt.gz");
  {
    std::ofstream out(plain);
    out << kSmall;
  }
  gzFile f = gzopen(gz.c_str(), "wb");
  REQUIRE(f != nullptr);
  gzputs(f, kSmall);
  gzclose(f);
  auto a = load_embeddings(plain);
  auto b = load_embeddings(gz);
  for (const char* w : {"bind", "Protein", "protein", "unknown"}) CHECK(a.lookup(w) == b.lookup(w));
  CHECK(b.size() == 3);
  std::filesystem::remove(plain);
  std::filesystem::remove(gz);
}

TEST_CASE("assemble concatenates the blocks in order") {
  TokenLayout layout{4, 8, 10};
  CHECK(layout.total() == 32);
  CHECK(TokenLayout{}.total() == 228);
  Vector w = Vector::Constant(4, 1.0), p = Vector::Constant(8, 2.0);
  Vector a = Vector::Constant(10, 3.0), b = Vector::Constant(10, 4.0);
  auto x = assemble(layout, w, p, a, b);
  REQUIRE(x.size() == 32);
  CHECK(x[0] == 1.0);
  CHECK(x[4] == 2.0);
  CHECK(x[12] == 3.0);
  CHECK(x[22] == 4.0);
  CHECK(x[31] == 4.0);
  CHECK_THROWS_AS(assemble(layout, w, Vector::Zero(7), a, b), DimensionMismatch);
}

TEST_CASE("disabled features leave only the word vector") {
  TokenLayout layout{200, 0, 0};
  Vector w = Vector::LinSpaced(200, 0.0, 1.0);
  auto x = assemble(layout, w, Vector(0), Vector(0), Vector(0));
  CHECK(x == w);
}
