#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "sdplstm/corpus.hpp"
#include "sdplstm/error.hpp"

using namespace sdplstm;

namespace {

std::vector<SentenceRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_corpus(in);
}

const char* kBnr =
    "s1\tBnrlp|NN interacts|VBZ with|IN another|DT Rho|NN family|NN member|NN ,|, Rho4p|NN "
    ",|, but|CC not|RB with|IN Rho1p|NN .|.\tBnrlp:0:0;Rho4p:8:8;Rho1p:13:13\tBnrlp-Rho4p\n";

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) out += (out.empty() ? "" : " ") + t;
  return out;
}

}  // namespace

TEST_CASE("parse a corpus line") {
  auto corpus = parse(kBnr);
  REQUIRE(corpus.size() == 1);
  const auto& s = corpus[0];
  CHECK(s.id == "s1");
  CHECK(s.tokens.size() == 15);
  CHECK(s.pos_tags[1] == "VBZ");
  REQUIRE(s.entities.size() == 3);
  CHECK(s.entities[1].entity_id == "Rho4p");
  CHECK(s.entities[1].token_start == 8);
  CHECK(s.interacts("Rho4p", "Bnrlp"));
  CHECK_FALSE(s.interacts("Bnrlp", "Rho1p"));
}

TEST_CASE("format round trip") {
  auto corpus = parse(kBnr);
  std::ostringstream out;
  write_corpus(out, corpus);
  CHECK(parse(out.str()) == corpus);
}

TEST_CASE("three entities give three pairs, one positive") {
  auto s = parse(kBnr)[0];
  auto pairs = generate_candidates(s);
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0].prot1 == "Bnrlp");
  CHECK(pairs[0].prot2 == "Rho4p");
  CHECK(pairs[0].label == Label::Interacting);
  CHECK(pairs[1].label == Label::NonInteracting);
  CHECK(pairs[2].label == Label::NonInteracting);
  CHECK(candidate_id(pairs[0]) == "s1:Bnrlp-Rho4p");
}

TEST_CASE("no entities or one entity give no pairs") {
  auto none = parse("a\tx|NN y|VB\t\n")[0];
  CHECK(generate_candidates(none).empty());
  auto one = parse("b\tx|NN y|VB\tp:0:0\n")[0];
  CHECK(generate_candidates(one).empty());
}

TEST_CASE("n entities give n(n-1)/2 pairs") {
  for (std::size_t n = 2; n <= 6; ++n) {
    SentenceRecord s;
    s.id = "x";
    for (std::size_t i = 0; i < n; ++i) {
      s.tokens.push_back("t" + std::to_string(i));
      s.pos_tags.push_back("NN");
      s.entities.push_back(Entity{"e" + std::to_string(i), i, i});
    }
    CHECK(generate_candidates(s).size() == n * (n - 1) / 2);
  }
}

TEST_CASE("generalization of the first pair") {
  auto s = parse(kBnr)[0];
  auto pairs = generate_candidates(s);
  auto g = generalize(s, pairs[0]);
  CHECK(join(g.tokens) ==
        "PROT1 interacts with another Rho family member , PROT2 , but not with PROTX .");
  CHECK(g.pos_tags[0] == kEntityTag);
  CHECK(std::count(g.tokens.begin(), g.tokens.end(), "PROT1") == 1);
  CHECK(std::count(g.tokens.begin(), g.tokens.end(), "PROT2") == 1);
}

TEST_CASE("multi-token entity collapses to one token") {
  auto s = parse("m\tthe|DT NF|NN kappa|NN B|NN binds|VBZ Tat|NN\tnf:1:3;tat:5:5\tnf-tat\n")[0];
  auto g = generalize(s, generate_candidates(s)[0]);
  CHECK(join(g.tokens) == "the PROT1 binds PROT2");
  CHECK(g.entities[0].token_start == 1);
  CHECK(g.entities[0].token_end == 1);
  CHECK(g.entities[1].token_start == 3);
}

TEST_CASE("generalize rejects foreign entities") {
  auto s = parse(kBnr)[0];
  CandidatePair bad{"s1", "Bnrlp", "Nope", Label::NonInteracting};
  CHECK_THROWS_AS(generalize(s, bad), EntityNotInSentence);
}

TEST_CASE("malformed input is reported with its line") {
  try {
    parse("ok\tx|NN\t\n\nbad\tx|NN y\t\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("a\tx|NN\t\na\ty|NN\t\n"), DuplicateSentenceId);
  CHECK_THROWS_AS(parse("a\tx|NN\tp:0:4\n"), ParseError);
  CHECK_THROWS_AS(parse("a\tx|NN y|NN\tp:0:1;q:1:1\n"), ParseError);
  CHECK_THROWS_AS(parse("a\tPROT1|NN\t\n"), ParseError);
  CHECK_THROWS_AS(parse("a\tx|NN\tp:0:0\tp-q\n"), ParseError);
  CHECK_THROWS_AS(parse("a only one field\n"), ParseError);
  CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.tsv"), FileNotFound);
}

TEST_CASE("fold split is a deterministic partition") {
  std::vector<std::string> ids;
  for (int i = 0; i < 23; ++i) ids.push_back("id" + std::to_string(i));
  auto a = split_folds(ids, 5, 3);
  auto b = split_folds(ids, 5, 3);
  CHECK(a.assignments == b.assignments);
  CHECK(a.assignments.size() == 23);
  auto sizes = a.fold_sizes();
  for (auto s : sizes) CHECK((s == 4 || s == 5));

  std::vector<std::string> reversed(ids.rbegin(), ids.rend());
  CHECK(split_folds(reversed, 5, 3).assignments == a.assignments);
  CHECK(split_folds(ids, 5, 4).assignments != a.assignments);
}

TEST_CASE("fold split errors") {
  std::vector<std::string> ids{"a", "b", "c"};
  CHECK_THROWS_AS(split_folds(ids, 1, 0), BadK);
  CHECK_THROWS_AS(split_folds(ids, 4, 0), BadK);
  CHECK_NOTHROW(split_folds(ids, 3, 0));
  CHECK_THROWS_AS(split_folds({"a", "a"}, 2, 0), InputError);
}

TEST_CASE("class ratio rounds to one decimal") {
  std::vector<CandidatePair> pairs;
  for (int i = 0; i < 939; ++i) pairs.push_back({"s", "a", "b", Label::Interacting});
  for (int i = 0; i < 3109; ++i) pairs.push_back({"s", "a", "b", Label::NonInteracting});
  auto st = class_stats(pairs);
  CHECK(st.positives == 939);
  CHECK(st.negatives == 3109);
  CHECK(st.ratio == doctest::Approx(3.3));
  CHECK(class_stats({}).ratio == 0.0);
}
