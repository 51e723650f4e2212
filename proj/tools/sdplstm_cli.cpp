// Command-line front end: preprocess, train, evaluate, cv, predict, sweep, synth.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sdplstm/checkpoint.hpp"
#include "sdplstm/config.hpp"
#include "sdplstm/error.hpp"
#include "sdplstm/instances.hpp"
#include "sdplstm/metrics.hpp"
#include "sdplstm/synthetic.hpp"
#include "sdplstm/trainer.hpp"

namespace {

using namespace sdplstm;

constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct Common {
  std::string config_path;
  std::vector<std::string> settings;  // key=value overrides
};

TrainConfig resolve_config(const Common& c) {
  TrainConfig config = c.config_path.empty() ? TrainConfig{} : load_config(c.config_path);
  for (const auto& s : c.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
    apply_setting(config, std::string_view(s).substr(0, eq), std::string_view(s).substr(eq + 1));
  }
  config.validate();
  return config;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

EmbeddingTable embeddings_for(const std::string& path, std::size_t dim, std::uint64_t seed) {
  return path.empty() ? EmbeddingTable(dim, seed) : load_embeddings(path, seed);
}

void report_preprocess(const InstanceSet& set) {
  std::cerr << "generated " << set.generated() << ", instances " << set.instances.size()
            << ", excluded " << set.excluded.size() << " (disconnected "
            << set.excluded_count(ExclusionReason::Disconnected) << ", path_too_long "
            << set.excluded_count(ExclusionReason::PathTooLong) << ")\n";
}

InstanceSet preprocess_from_config(const std::string& corpus, const std::string& deps,
                                   const TrainConfig& config, bool require_deps) {
  PreprocessOptions opt;
  opt.window = config.position_window;
  opt.use_pos = config.use_pos;
  opt.use_position = config.use_position;
  opt.max_sdp_tokens = config.max_sdp_tokens;
  opt.require_dependencies = require_deps;
  InstanceSet set = preprocess(load_corpus(corpus), load_dependencies(deps),
                               embeddings_for(config.embedding_path, config.embedding_dim,
                                              config.oov_seed),
                               opt);
  report_preprocess(set);
  return set;
}

std::string metrics_report(const std::string& format, const std::vector<FoldMetrics>& folds,
                           const FoldMetrics& micro, const FoldMetrics& macro) {
  if (format == "json") return metrics_json(folds, micro, macro);
  return metrics_csv(folds, micro, macro);
}

int run(int argc, char** argv) {
  CLI::App app{"Protein interaction extraction over shortest dependency paths"};
  app.require_subcommand(1);

  // preprocess
  std::string corpus_path, deps_path, out_path, embeddings_path;
  std::size_t window = kDefaultPositionWindow, dim = kDefaultWordDim, max_sdp = kMaxSdpTokens;
  std::uint64_t oov_seed = kDefaultOovSeed;
  bool no_pos = false, no_position = false, require_deps = false;
  auto* pre = app.add_subcommand("preprocess", "Extract SDP instances from a corpus");
  pre->add_option("--corpus", corpus_path, "Corpus TSV")->required();
  pre->add_option("--deps", deps_path, "Dependency edge TSV")->required();
  pre->add_option("--out", out_path, "Instance file (JSON lines)")->required();
  pre->add_option("--embeddings", embeddings_path, "word2vec text file, optionally .gz");
  pre->add_option("--dim", dim, "Word vector size when no embeddings are given");
  pre->add_option("--oov-seed", oov_seed, "Seed of the unknown-word vectors");
  pre->add_option("--window", window, "Position code width")
      ->check(CLI::Range(kMinPositionWindow, kMaxPositionWindow));
  pre->add_option("--max-sdp", max_sdp, "Longest usable path in tokens");
  pre->add_flag("--no-pos", no_pos, "Drop the PoS feature");
  pre->add_flag("--no-position", no_position, "Drop the position features");
  pre->add_flag("--require-deps", require_deps, "Fail on sentences without dependency lines");

  // train
  Common common;
  std::string instances_path, ck_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "key=value config file");
    sub->add_option("--set", common.settings, "Override one config key (key=value)");
  };
  auto* tr = app.add_subcommand("train", "Train a model on an instance file");
  tr->add_option("--instances", instances_path, "Instance file")->required();
  tr->add_option("--out", ck_path, "Checkpoint to write")->required();
  add_common(tr);

  // evaluate
  std::string report_format = "csv", report_path;
  auto* ev = app.add_subcommand("evaluate", "Score a checkpoint on an instance file");
  ev->add_option("--ck", ck_path, "Checkpoint")->required();
  ev->add_option("--instances", instances_path, "Instance file")->required();
  ev->add_option("--report", report_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  ev->add_option("--out", report_path, "Report file (default stdout)");

  // cv
  std::optional<std::size_t> k;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  auto* cv = app.add_subcommand("cv", "k-fold cross-validation");
  cv->add_option("--corpus", corpus_path, "Corpus TSV");
  cv->add_option("--deps", deps_path, "Dependency edge TSV");
  cv->add_option("--instances", instances_path, "Instance file instead of corpus + deps");
  cv->add_option("--k", k, "Number of folds");
  cv->add_option("--seed", seed, "Seed for folds and training");
  cv->add_option("--jobs", jobs, "Folds trained in parallel");
  cv->add_option("--report", report_path, "Report file (default stdout)");
  cv->add_option("--format", report_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cv->add_flag("--require-deps", require_deps, "Fail on sentences without dependency lines");
  add_common(cv);

  // predict
  auto* pr = app.add_subcommand("predict", "Per-instance predictions as TSV");
  pr->add_option("--ck", ck_path, "Checkpoint")->required();
  pr->add_option("--instances", instances_path, "Instance file")->required();
  pr->add_option("--out", report_path, "Output file (default stdout)");

  // sweep
  std::string param;
  std::vector<double> values;
  auto* sw = app.add_subcommand("sweep", "Cross-validated F1 over one hyperparameter");
  sw->add_option("--param", param, "epochs, mlp_hidden or window")
      ->required()
      ->check(CLI::IsMember({"epochs", "mlp_hidden", "window"}));
  sw->add_option("--values", values, "Values to try")->required()->delimiter(',');
  sw->add_option("--corpus", corpus_path, "Corpus TSV");
  sw->add_option("--deps", deps_path, "Dependency edge TSV");
  sw->add_option("--instances", instances_path, "Instance file instead of corpus + deps");
  sw->add_option("--jobs", jobs, "Folds trained in parallel");
  sw->add_option("--out", report_path, "CSV file (default stdout)");
  add_common(sw);

  // synth
  std::string kind = "interaction";
  std::size_t count = 60, positives = 939, negatives = 3109, edgeless = 0;
  std::uint64_t synth_seed = 7;
  std::size_t synth_dim = 16;
  auto* sy = app.add_subcommand("synth", "Write a generated corpus, edges and embeddings");
  sy->add_option("--kind", kind, "interaction or ppi")
      ->check(CLI::IsMember({"interaction", "ppi"}));
  sy->add_option("--out", out_path, "Output directory")->required();
  sy->add_option("--n", count, "Sentences (interaction)");
  sy->add_option("--positives", positives, "Interacting pairs (ppi)");
  sy->add_option("--negatives", negatives, "Non-interacting pairs (ppi)");
  sy->add_option("--edgeless", edgeless, "Sentences without edges (ppi)");
  sy->add_option("--seed", synth_seed, "Generator seed");
  sy->add_option("--dim", synth_dim, "Word vector size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInput;
  }

  auto load_set = [&](const TrainConfig& config) {
    if (!instances_path.empty()) return load_instances(instances_path);
    if (corpus_path.empty() || deps_path.empty()) {
      throw InputError("give --instances, or both --corpus and --deps");
    }
    return preprocess_from_config(corpus_path, deps_path, config, require_deps);
  };

  if (*pre) {
    PreprocessOptions opt;
    opt.window = window;
    opt.use_pos = !no_pos;
    opt.use_position = !no_position;
    opt.max_sdp_tokens = max_sdp;
    opt.require_dependencies = require_deps;
    InstanceSet set = preprocess(load_corpus(corpus_path), load_dependencies(deps_path),
                                 embeddings_for(embeddings_path, dim, oov_seed), opt);
    save_instances(out_path, set);
    report_preprocess(set);
  } else if (*tr) {
    const TrainConfig config = resolve_config(common);
    const InstanceSet set = load_instances(instances_path);
    const Checkpoint ck = train(config, set, [](std::size_t epoch, double loss, const Checkpoint&) {
      std::fprintf(stderr, "epoch %zu loss %.6f\n", epoch, loss);
      return true;
    });
    save_checkpoint(ck, ck_path);
  } else if (*ev) {
    const Checkpoint ck = load_checkpoint(ck_path);
    const InstanceSet set = load_instances(instances_path);
    const FoldMetrics m = evaluate(ck, set.instances, set.excluded, ck.config.score_excluded);
    write_text(report_path, metrics_report(report_format, {m}, m, m));
  } else if (*cv) {
    TrainConfig config = resolve_config(common);
    if (k) config.k_folds = *k;
    if (seed) config.seed = *seed;
    config.validate();
    const InstanceSet set = load_set(config);
    const CvResult result = cross_validate(config, set, jobs);
    write_text(report_path,
               metrics_report(report_format, result.per_fold, result.micro, result.macro));
  } else if (*pr) {
    const Checkpoint ck = load_checkpoint(ck_path);
    const InstanceSet set = load_instances(instances_path);
    std::ostringstream out;
    out << "id\tlabel\tprob_positive\n";
    char prob[32];
    for (const auto& inst : set.instances) {
      const Prediction p = predict(ck, inst);
      std::snprintf(prob, sizeof prob, "%.6f", p.prob_positive);
      out << inst.id << '\t' << static_cast<int>(p.label) << '\t' << prob << '\n';
    }
    for (const auto& ex : set.excluded) {
      out << ex.id << "\t0\t" << to_string(ex.reason) << '\n';
    }
    write_text(report_path, out.str());
  } else if (*sw) {
    const TrainConfig config = resolve_config(common);
    const InstanceSet set = load_set(config);
    write_text(report_path, sweep(config, set, param, values, jobs));
  } else if (*sy) {
    const SyntheticCorpus c = kind == "ppi"
                                  ? make_ppi_fixture(positives, negatives, edgeless, synth_seed, synth_dim)
                                  : make_interaction_corpus(count, synth_seed, synth_dim);
    c.write(out_path);
    std::cerr << "wrote " << c.sentences.size() << " sentences, " << c.positives
              << " interacting and " << c.negatives << " non-interacting pairs\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sdplstm::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const sdplstm::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
