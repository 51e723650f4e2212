// Acceptance suite: one PASS/FAIL line per criterion. Usage: acceptance <path-to-cli>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <string>

#include "fixtures.hpp"
#include "sdplstm/checkpoint.hpp"
#include "sdplstm/error.hpp"
#include "sdplstm/gradcheck.hpp"
#include "sdplstm/metrics.hpp"
#include "sdplstm/rng.hpp"
#include "sdplstm/trainer.hpp"

using namespace sdplstm;
namespace fs = std::filesystem;

namespace {

// Tolerances and budgets.
constexpr double kGradTolerance = 1e-4;
constexpr double kGradSeconds = 60.0;
constexpr double kOracleSeconds = 10.0;
constexpr double kSyntheticSeconds = 300.0;
constexpr std::size_t kSyntheticEpochs = 200;
constexpr double kSyntheticTestAccuracy = 0.90;
constexpr double kMetricTolerance = 0.01;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome gradients() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::size_t checked = 0;
  for (auto arch : {Architecture::SdpLstm, Architecture::BaselineRnn}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      for (std::size_t len : {1u, 3u, 7u}) {
        Rng rng(mix64(seed, len));
        ModelShape shape;
        shape.architecture = arch;
        shape.input_dim = 8;
        shape.units = 10;
        shape.mlp_hidden = 6;
        ModelParams m = ModelParams::zeros(shape);
        for (auto v : m.views()) {
          for (double& d : v) d = rng.uniform(-0.5, 0.5);
        }
        std::vector<Vector> xs;
        for (std::size_t k = 0; k < len; ++k) {
          Vector x(8);
          for (auto& e : x) e = rng.uniform(-1, 1);
          xs.push_back(x);
        }
        auto report = gradient_check(m, xs, static_cast<int>(rng.index(2)), 1e-5);
        worst = std::max(worst, report.max_relative_error);
        ++checked;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst < kGradTolerance && secs < kGradSeconds,
          "max relative error " + fmt("%.2e", worst) + " over " + std::to_string(checked) +
              " instances, " + fmt("%.1f", secs) + " s"};
}

Outcome sdp_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(2);
  std::size_t agree = 0;
  const std::size_t graphs = 200;
  for (std::size_t g = 0; g < graphs; ++g) {
    const std::size_t n = 2 + rng.index(9);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t v = 1; v < n; ++v) pairs.emplace_back(rng.index(v), v);
    for (std::size_t e = rng.index(2 * n); e > 0; --e) {
      const std::size_t a = rng.index(n), b = rng.index(n);
      if (a != b) pairs.emplace_back(a, b);
    }
    auto es = fixtures::edges(pairs);
    SentenceRecord s;
    s.id = "g";
    s.tokens.assign(n, "w");
    s.pos_tags.assign(n, "NN");
    const auto graph = build_graph(s, es);
    const std::size_t src = rng.index(n);
    const std::size_t dst = (src + 1 + rng.index(n - 1)) % n;

    const auto path = shortest_path(graph, src, dst);
    const auto again = shortest_path(graph, src, dst);
    const auto mins = fixtures::minimal_paths(fixtures::adjacency(n, es), src, dst);
    bool valid = path.node_indices.front() == src && path.node_indices.back() == dst;
    for (std::size_t i = 0; i + 1 < path.node_indices.size(); ++i) {
      valid = valid && graph.adjacent(path.node_indices[i], path.node_indices[i + 1]);
    }
    std::vector<std::size_t> sorted = path.node_indices;
    std::sort(sorted.begin(), sorted.end());
    valid = valid && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    if (valid && path == again && !mins.empty() && path.node_indices.size() == mins[0].size() &&
        path.node_indices == mins[0]) {
      ++agree;
    }
  }
  const double secs = seconds_since(t0);
  return {agree == graphs && secs < kOracleSeconds,
          std::to_string(agree) + "/" + std::to_string(graphs) + " graphs agree, " +
              fmt("%.2f", secs) + " s"};
}

Outcome distance_table() {
  const char* columns[] = {"0000000000", "0000000001", "0000000011", "0000000111",
                           "0000001111", "0000011111", "0000111111", "0001111111",
                           "0011111111", "0111111111", "1111111111"};
  std::size_t ok = 0, total = 0;
  for (long d = 0; d <= 10; ++d, ++total) ok += encode_position(d).to_string() == columns[d];
  for (long d : {11L, 15L, 100L, -100L}) {
    ++total;
    ok += encode_position(d).to_string() == "1111111111";
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " codes match"};
}

Outcome feature_table() {
  const char* feature1[] = {"0000000000", "0000000001", "0000000011", "0000000111",
                            "0000001111", "0000011111", "0000111111"};
  const char* feature2[] = {"0000111111", "0000011111", "0000001111", "0000000111",
                            "0000000011", "0000000001", "0000000000"};
  auto set = preprocess({fixtures::regulator_sentence()}, {{"tab", fixtures::regulator_edges()}},
                        EmbeddingTable(8));
  if (set.instances.size() != 1) return {false, "expected one instance"};
  const auto& inst = set.instances[0];
  const std::size_t n = inst.length();
  bool ok = n == 7;
  for (std::size_t k = 0; ok && k < n; ++k) {
    const auto [d1, d2] = relative_positions(k, n);
    ok = d1 == static_cast<long>(k) && d2 == static_cast<long>(k) - 6 &&
         encode_position(d1).to_string() == feature1[k] &&
         encode_position(d2).to_string() == feature2[k];
  }
  std::string path;
  for (const auto& t : inst.tokens) path += (path.empty() ? "" : " ") + t;
  return {ok, std::to_string(n) + " tokens: " + path};
}

Outcome synthetic_end_to_end() {
  const auto t0 = std::chrono::steady_clock::now();
  auto set = fixtures::interaction_set(60, 7);
  if (set.instances.size() != 60) return {false, "expected 60 instances"};
  const auto train_set = fixtures::head(set, 0, 40);
  const auto test_set = fixtures::head(set, 40, 60);
  TrainConfig config;
  config.seed = 7;
  config.epochs = kSyntheticEpochs;
  std::size_t first_perfect = 0;
  const auto ck = train(config, train_set, [&](std::size_t epoch, double, const Checkpoint& c) {
    if (accuracy(c, train_set.instances) == 1.0) {
      first_perfect = epoch;
      return false;
    }
    return true;
  });
  const double train_acc = accuracy(ck, train_set.instances);
  const double test_acc = accuracy(ck, test_set.instances);
  const double secs = seconds_since(t0);
  return {first_perfect > 0 && test_acc >= kSyntheticTestAccuracy && secs < kSyntheticSeconds,
          "train accuracy " + fmt("%.3f", train_acc) + " at epoch " +
              std::to_string(first_perfect) + ", test accuracy " + fmt("%.3f", test_acc) + ", " +
              fmt("%.1f", secs) + " s"};
}

Outcome metric_arithmetic() {
  std::vector<std::pair<Label, Label>> rows;
  auto add = [&](std::size_t n, Label gold, Label pred) {
    for (std::size_t i = 0; i < n; ++i) rows.emplace_back(gold, pred);
  };
  add(41, Label::Interacting, Label::Interacting);
  add(4, Label::NonInteracting, Label::Interacting);
  add(9, Label::Interacting, Label::NonInteracting);
  add(100, Label::NonInteracting, Label::NonInteracting);
  // Excluded pairs are scored as NonInteracting predictions, which gives a model-free way to
  // build an exact confusion set through evaluate().
  std::vector<SdpInstance> predicted_positive;
  std::vector<ExcludedInstance> predicted_negative;
  auto inst_set = fixtures::interaction_set(2, 1);
  Checkpoint ck = train([] {
    TrainConfig c;
    c.epochs = 1;
    c.lstm_units = 4;
    c.autoencoder_epochs = 1;
    return c;
  }(), inst_set);
  ck.model = ModelParams::zeros(ck.model.shape);  // prob 0.5 -> Interacting
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].second == Label::Interacting) {
      SdpInstance inst = inst_set.instances[0];
      inst.label = rows[i].first;
      predicted_positive.push_back(inst);
    } else {
      predicted_negative.push_back(
          {"r" + std::to_string(i), "r", rows[i].first, ExclusionReason::Disconnected});
    }
  }
  const auto m = evaluate(ck, predicted_positive, predicted_negative, true);
  const bool counts = m.tp == 41 && m.fp == 4 && m.fn == 9 && m.tn == 100;
  const bool ok = counts && std::abs(m.precision - 91.11) <= kMetricTolerance &&
                  std::abs(m.recall - 82.00) <= kMetricTolerance &&
                  std::abs(m.f1 - 86.32) <= kMetricTolerance;
  return {ok, "P=" + fmt("%.4f", m.precision) + " R=" + fmt("%.4f", m.recall) +
                  " F1=" + fmt("%.4f", m.f1)};
}

Outcome candidate_accounting() {
  struct Spec {
    std::size_t pos, neg, edgeless;
    double ratio;
  };
  std::string detail;
  bool ok = true;
  for (const Spec& spec : {Spec{939, 3109, 12, 3.3}, Spec{1077, 5951, 20, 5.5}}) {
    auto c = make_ppi_fixture(spec.pos, spec.neg, spec.edgeless, 17);
    std::vector<CandidatePair> pairs;
    for (const auto& s : c.sentences) {
      auto p = generate_candidates(s);
      pairs.insert(pairs.end(), p.begin(), p.end());
    }
    const auto stats = class_stats(pairs);
    const auto set = preprocess(c.sentences, c.deps, c.embeddings());

    TrainConfig cfg;
    cfg.epochs = 1;
    cfg.lstm_units = 4;
    cfg.mlp_hidden = 4;
    cfg.autoencoder_epochs = 1;
    const auto ck = train(cfg, fixtures::head(set, 0, 16));
    const auto m = evaluate(ck, set.instances, set.excluded, true);

    const bool this_ok = stats.positives == spec.pos && stats.negatives == spec.neg &&
                         stats.ratio == spec.ratio && set.generated() == pairs.size() &&
                         set.instances.size() + set.excluded.size() == pairs.size() &&
                         set.excluded.size() == c.expected_excluded &&
                         m.total() == pairs.size();
    ok = ok && this_ok;
    detail += (detail.empty() ? "" : "; ") + std::to_string(stats.positives) + "+" +
              std::to_string(stats.negatives) + " (ratio " + fmt("%.1f", stats.ratio) +
              "), evaluated " + std::to_string(set.instances.size()) + " + excluded " +
              std::to_string(set.excluded.size()) + " = " + std::to_string(set.generated());
  }
  return {ok, detail};
}

Outcome cv_determinism(const std::string& cli) {
  const fs::path dir = fs::temp_directory_path() / "sdplstm_acceptance_cv";
  fs::remove_all(dir);
  make_interaction_corpus(40, 11).write(dir);
  {
    std::ofstream cfg(dir / "config.txt");
    cfg << "epochs=8\nlstm_units=16\nmlp_hidden=10\nautoencoder_epochs=100\n";
  }
  auto run = [&](const std::string& report) {
    const std::string cmd = "\"" + cli + "\" cv --corpus \"" + (dir / "corpus.tsv").string() +
                            "\" --deps \"" + (dir / "deps.tsv").string() + "\" --config \"" +
                            (dir / "config.txt").string() + "\" --set embedding_path=" +
                            (dir / "embeddings.txt").string() + " --k 4 --seed 5 --report \"" +
                            (dir / report).string() + "\" 2>/dev/null";
    return std::system(cmd.c_str());
  };
  const int rc1 = run("a.csv");
  const int rc2 = run("b.csv");
  const std::string a = slurp(dir / "a.csv");
  const std::string b = slurp(dir / "b.csv");
  const bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
  fs::remove_all(dir);
  return {ok, "exit codes " + std::to_string(rc1) + "/" + std::to_string(rc2) + ", " +
                  std::to_string(a.size()) + " bytes, identical=" + (a == b ? "yes" : "no")};
}

Outcome checkpoint_round_trip() {
  const fs::path dir = fs::temp_directory_path() / "sdplstm_acceptance_ck";
  fs::create_directories(dir);
  TrainConfig cfg;
  cfg.epochs = 20;
  const auto ck = train(cfg, fixtures::interaction_set(40, 7));
  save_checkpoint(ck, dir / "a.bin");
  save_checkpoint(load_checkpoint(dir / "a.bin"), dir / "b.bin");
  const std::string a = slurp(dir / "a.bin");
  const bool same = !a.empty() && a == slurp(dir / "b.bin");

  std::string damaged = a;
  damaged[damaged.size() / 2] ^= 0x20;
  {
    std::ofstream out(dir / "c.bin", std::ios::binary);
    out << damaged;
  }
  bool rejected = false;
  try {
    load_checkpoint(dir / "c.bin");
  } catch (const CorruptChecksum&) {
    rejected = true;
  }
  bool truncated = false;
  try {
    deserialize_checkpoint(a.substr(0, a.size() - 3));
  } catch (const CorruptChecksum&) {
    truncated = true;
  }
  fs::remove_all(dir);
  return {same && rejected && truncated,
          std::to_string(a.size()) + " bytes, save-load-save identical=" + (same ? "yes" : "no") +
              ", corrupted rejected=" + (rejected ? "yes" : "no") +
              ", truncated rejected=" + (truncated ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-sdplstm-cli>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"gradient check, sdpLSTM + RNN", gradients},
      {"SDP vs exhaustive search", sdp_oracle},
      {"distance code table", distance_table},
      {"feature table sentence", feature_table},
      {"synthetic end-to-end", synthetic_end_to_end},
      {"metric arithmetic", metric_arithmetic},
      {"candidate accounting", candidate_accounting},
      {"cv determinism (CLI)", [&] { return cv_determinism(cli); }},
      {"checkpoint round trip", checkpoint_round_trip},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
