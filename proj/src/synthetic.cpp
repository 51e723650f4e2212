#include "sdplstm/synthetic.hpp"

#include <array>
#include <fstream>
#include <set>

#include "sdplstm/error.hpp"
#include "sdplstm/rng.hpp"

namespace sdplstm {

namespace {

struct Word {
  const char* text;
  const char* tag;
};

constexpr std::array<Word, 2> kTriggers{{{"bind", "VB"}, {"interacts", "VBZ"}}};
constexpr std::array<Word, 12> kNeutral{{{"with", "IN"},
                                         {"of", "IN"},
                                         {"near", "IN"},
                                         {"and", "CC"},
                                         {"complex", "NN"},
                                         {"domain", "NN"},
                                         {"expression", "NN"},
                                         {"level", "NN"},
                                         {"shown", "VBN"},
                                         {"found", "VBN"},
                                         {"the", "DT"},
                                         {"strongly", "RB"}}};
constexpr std::array<Word, 6> kFiller{{{"cells", "NNS"},
                                       {"in", "IN"},
                                       {"activated", "VBN"},
                                       {"human", "JJ"},
                                       {"the", "DT"},
                                       {"regulates", "VBZ"}}};

template <std::size_t N>
const Word& pick(const std::array<Word, N>& words, Rng& rng) {
  return words[rng.index(N)];
}

void add_vectors(SyntheticCorpus& c, Rng& rng) {
  std::set<std::string> vocab;
  for (const auto& s : c.sentences) {
    for (std::size_t t = 0; t < s.tokens.size(); ++t) vocab.insert(s.tokens[t]);
  }
  for (const auto& word : vocab) {
    Vector v(static_cast<Eigen::Index>(c.word_dim));
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    c.word_vectors.emplace_back(word, std::move(v));
  }
}

void connect(std::vector<DependencyEdge>& edges, std::size_t head, std::size_t dep) {
  edges.push_back(DependencyEdge{head, dep, "dep"});
}

}  // namespace

EmbeddingTable SyntheticCorpus::embeddings(std::uint64_t oov_seed) const {
  EmbeddingTable table(word_dim, oov_seed);
  for (const auto& [word, vec] : word_vectors) table.insert(word, vec);
  return table;
}

void SyntheticCorpus::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name);
    if (!out) throw IoError("cannot write " + (dir / name).string());
    return out;
  };
  auto corpus = open("corpus.tsv");
  write_corpus(corpus, sentences);
  auto deps_out = open("deps.tsv");
  write_dependencies(deps_out, deps);
  auto emb = open("embeddings.txt");
  emb << word_vectors.size() << ' ' << word_dim << '\n';
  emb.precision(17);
  for (const auto& [word, vec] : word_vectors) {
    emb << word;
    for (double x : vec) emb << ' ' << x;
    emb << '\n';
  }
}

SyntheticCorpus make_interaction_corpus(std::size_t sentences, std::uint64_t seed,
                                        std::size_t word_dim) {
  if (word_dim == 0) throw InputError("word_dim must be positive");
  Rng rng(seed);
  SyntheticCorpus c;
  c.word_dim = word_dim;
  for (std::size_t i = 0; i < sentences; ++i) {
    const bool positive = i % 2 == 0;
    SentenceRecord s;
    s.id = "syn" + std::to_string(i);

    std::vector<Word> path;
    const std::size_t path_len = 1 + rng.index(3);
    for (std::size_t p = 0; p < path_len; ++p) path.push_back(pick(kNeutral, rng));
    if (positive) path[rng.index(path_len)] = pick(kTriggers, rng);

    s.tokens.push_back("Prot" + std::to_string(2 * i));
    s.pos_tags.push_back("NN");
    for (const Word& w : path) {
      s.tokens.emplace_back(w.text);
      s.pos_tags.emplace_back(w.tag);
    }
    s.tokens.push_back("Prot" + std::to_string(2 * i + 1));
    s.pos_tags.push_back("NN");
    const std::size_t last = s.tokens.size() - 1;

    std::vector<DependencyEdge>& edges = c.deps[s.id];
    for (std::size_t t = 0; t < last; ++t) connect(edges, t + 1, t);

    // Leaves hanging off the chain never lie on the path between the entities.
    const std::size_t leaves = rng.index(3);
    for (std::size_t l = 0; l < leaves; ++l) {
      const Word& w = rng.index(2) == 0 ? pick(kTriggers, rng) : pick(kNeutral, rng);
      s.tokens.emplace_back(w.text);
      s.pos_tags.emplace_back(w.tag);
      connect(edges, rng.index(last + 1), s.tokens.size() - 1);
    }

    s.entities = {Entity{"e1", 0, 0}, Entity{"e2", last, last}};
    if (positive) {
      s.interactions.emplace_back("e1", "e2");
      ++c.positives;
    } else {
      ++c.negatives;
    }
    c.sentences.push_back(std::move(s));
  }
  add_vectors(c, rng);
  return c;
}

SyntheticCorpus make_ppi_fixture(std::size_t positives, std::size_t negatives,
                                 std::size_t edgeless, std::uint64_t seed, std::size_t word_dim) {
  if (word_dim == 0) throw InputError("word_dim must be positive");
  Rng rng(seed);
  SyntheticCorpus c;
  c.word_dim = word_dim;
  std::size_t pos_left = positives;
  std::size_t neg_left = negatives;

  for (std::size_t i = 0; pos_left + neg_left > 0; ++i) {
    const std::size_t left = pos_left + neg_left;
    std::size_t m = 2 + rng.index(3);
    while (m * (m - 1) / 2 > left) --m;
    const std::size_t pairs = m * (m - 1) / 2;
    const std::size_t lo = pairs > neg_left ? pairs - neg_left : 0;
    const std::size_t hi = std::min(pos_left, pairs);
    const std::size_t sentence_pos = lo + rng.index(hi - lo + 1);

    SentenceRecord s;
    s.id = "ppi" + std::to_string(i);
    for (std::size_t e = 0; e < m; ++e) {
      const std::size_t fillers = 1 + rng.index(3);
      for (std::size_t f = 0; f < fillers; ++f) {
        const Word& w = rng.index(3) == 0 ? pick(kTriggers, rng) : pick(kFiller, rng);
        s.tokens.emplace_back(w.text);
        s.pos_tags.emplace_back(w.tag);
      }
      const std::size_t span = rng.index(4) == 0 ? 2 : 1;
      const std::size_t start = s.tokens.size();
      for (std::size_t t = 0; t < span; ++t) {
        s.tokens.push_back("Gene" + std::to_string(i) + "x" + std::to_string(e) +
                           (t ? "b" : ""));
        s.pos_tags.push_back("NN");
      }
      s.entities.push_back(Entity{"e" + std::to_string(e), start, start + span - 1});
    }
    s.tokens.emplace_back(".");
    s.pos_tags.emplace_back(".");

    std::vector<std::pair<std::size_t, std::size_t>> all_pairs;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) all_pairs.emplace_back(a, b);
    }
    rng.shuffle(std::span(all_pairs));
    for (std::size_t p = 0; p < sentence_pos; ++p) {
      s.interactions.emplace_back("e" + std::to_string(all_pairs[p].first),
                                  "e" + std::to_string(all_pairs[p].second));
    }
    pos_left -= sentence_pos;
    neg_left -= pairs - sentence_pos;
    c.positives += sentence_pos;
    c.negatives += pairs - sentence_pos;

    if (i < edgeless) {
      c.expected_excluded += pairs;
    } else {
      std::vector<DependencyEdge>& edges = c.deps[s.id];
      for (std::size_t t = 1; t < s.tokens.size(); ++t) connect(edges, rng.index(t), t);
    }
    c.sentences.push_back(std::move(s));
  }
  add_vectors(c, rng);
  return c;
}

}  // namespace sdplstm
