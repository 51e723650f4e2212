#include "sdplstm/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "sdplstm/error.hpp"
#include "sdplstm/rng.hpp"

namespace sdplstm {

namespace {

bool is_placeholder(std::string_view token) {
  return token == kProt1Token || token == kProt2Token || token == kOtherProtToken;
}

int label_index(Label l) { return l == Label::Interacting ? 1 : 0; }

void scale(ModelParams& grad, double factor) {
  for (auto v : grad.views()) {
    for (double& d : v) d *= factor;
  }
}

// Optimizer over the model tensors, plus one accumulator per tuned word.
class Optimizer {
 public:
  explicit Optimizer(const TrainConfig& c) : kind_(c.optimizer) {
    adam_.learning_rate = c.learning_rate;
  }

  void step(ModelParams& params, const ModelParams& grad) {
    const ModelParams& g = grad;
    apply(model_adam_, model_adadelta_, params.views(), g.views());
  }

  void step_word(const std::string& token, Vector& vec, const Vector& grad) {
    apply(word_adam_[token], word_adadelta_[token], ParamViews{flat(vec)}, GradViews{flat(grad)});
  }

 private:
  void apply(AdamState& adam, AdadeltaState& adadelta, const ParamViews& p, const GradViews& g) {
    if (kind_ == OptimizerKind::Adam) {
      adam.options = adam_;
      adam_step(adam, p, g);
    } else {
      adadelta_step(adadelta, p, g);
    }
  }

  OptimizerKind kind_;
  AdamOptions adam_;
  AdamState model_adam_;
  AdadeltaState model_adadelta_;
  std::map<std::string, AdamState> word_adam_;
  std::map<std::string, AdadeltaState> word_adadelta_;
};

FoldMetrics count(const std::vector<std::pair<Label, Label>>& gold_pred) {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (const auto& [gold, pred] : gold_pred) {
    const bool g = gold == Label::Interacting;
    const bool p = pred == Label::Interacting;
    if (g && p) ++tp;
    else if (!g && p) ++fp;
    else if (g) ++fn;
    else ++tn;
  }
  return FoldMetrics::from_counts(tp, fp, fn, tn);
}

std::size_t sweep_value(std::string_view param, double v) {
  if (!(v >= 0) || v != std::floor(v) || v > 1e9) {
    throw ConfigError("sweep value for " + std::string(param) + " must be a whole number");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

FeatureEncoders fit_encoders(const TrainConfig& config, const InstanceSet& train) {
  FeatureEncoders enc;
  enc.word_dim = train.word_dim;
  enc.window = train.window;
  enc.use_pos = config.use_pos && train.use_pos;
  enc.use_position = config.use_position && train.use_position;
  enc.position_autoencoder = Autoencoder::zeros(enc.window);

  const AutoencoderOptions options{config.autoencoder_epochs, {}};
  if (enc.use_pos) {
    std::set<std::size_t> classes;
    for (const auto& inst : train.instances) {
      for (const auto& tag : inst.pos_tags) classes.insert(enc.pos_table.classify(tag));
    }
    std::vector<Vector> samples;
    for (std::size_t c : classes) samples.push_back(encode_pos_onehot(c).to_vector());
    if (!samples.empty()) {
      enc.pos_autoencoder =
          train_autoencoder(samples, kPosClasses, mix64(config.seed, 1), options).model;
    }
  }
  if (enc.use_position) {
    std::set<std::size_t> levels;
    for (const auto& inst : train.instances) {
      const std::size_t n = inst.length();
      for (std::size_t k = 0; k < n; ++k) {
        const auto [d1, d2] = relative_positions(k, n);
        levels.insert(encode_position(d1, enc.window).popcount());
        levels.insert(encode_position(d2, enc.window).popcount());
      }
    }
    std::vector<Vector> samples;
    for (std::size_t m : levels) {
      samples.push_back(encode_position(static_cast<long>(m), enc.window).to_vector());
    }
    if (!samples.empty()) {
      enc.position_autoencoder =
          train_autoencoder(samples, enc.window, mix64(config.seed, 2), options).model;
    }
  }
  return enc;
}

Checkpoint train(const TrainConfig& config, const InstanceSet& train, const EpochHook& hook) {
  config.validate();
  if (train.instances.empty()) throw EmptyTrainingSet("no instances to train on");

  Checkpoint ck;
  ck.config = config;
  ck.oov_seed = train.oov_seed;
  ck.encoders = fit_encoders(config, train);
  const std::size_t word_dim = ck.encoders.word_dim;
  const auto wd = static_cast<Eigen::Index>(word_dim);

  for (const auto& inst : train.instances) {
    for (std::size_t k = 0; k < inst.length(); ++k) {
      if (is_placeholder(inst.tokens[k])) {
        ck.special_vectors.emplace(inst.tokens[k], inst.word_vectors[k]);
      }
      if (config.tune_embeddings) ck.tuned_embeddings.emplace(inst.tokens[k], inst.word_vectors[k]);
    }
  }

  ModelShape shape;
  shape.architecture = config.model;
  shape.input_dim = ck.encoders.layout().total();
  shape.units = config.lstm_units;
  shape.mlp_hidden = config.mlp_hidden;
  shape.mlp_depth = config.mlp_depth;
  shape.fixed_length = config.fixed_length;
  shape.activation = config.activation;
  Rng init_rng(mix64(config.seed, 3));
  ck.model = ModelParams::init(shape, init_rng);

  std::vector<std::vector<Vector>> inputs;
  inputs.reserve(train.instances.size());
  for (const auto& inst : train.instances) inputs.push_back(ck.encoders.encode(inst));

  Rng shuffle_rng(mix64(config.seed, 4));
  Rng dropout_rng(mix64(config.seed, 5));
  Optimizer optimizer(config);
  const std::size_t n = train.instances.size();
  std::vector<std::size_t> order(n);

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle_rng.shuffle(std::span<std::size_t>(order));
    double total = 0.0;
    for (std::size_t start = 0; start < n; start += config.batch) {
      const std::size_t end = std::min(n, start + config.batch);
      ModelParams grad = ModelParams::zeros(shape);
      std::map<std::string, Vector> word_grad;
      for (std::size_t b = start; b < end; ++b) {
        const SdpInstance& inst = train.instances[order[b]];
        std::vector<Vector>& xs = inputs[order[b]];
        if (config.tune_embeddings) {
          for (std::size_t k = 0; k < xs.size(); ++k) {
            xs[k].head(wd) = ck.tuned_embeddings.at(inst.tokens[k]);
          }
        }
        const DropoutMasks masks = draw_dropout(shape, config.dropout, dropout_rng);
        std::vector<Vector> d_inputs;
        total += backward(ck.model, xs, label_index(inst.label), &masks, grad,
                          config.tune_embeddings ? &d_inputs : nullptr);
        if (config.tune_embeddings) {
          for (std::size_t k = 0; k < xs.size(); ++k) {
            auto [it, fresh] = word_grad.try_emplace(inst.tokens[k], Vector::Zero(wd));
            it->second += d_inputs[k].head(wd);
          }
        }
      }
      const double inv = 1.0 / static_cast<double>(end - start);
      scale(grad, inv);
      optimizer.step(ck.model, grad);
      for (auto& [token, g] : word_grad) {
        g *= inv;
        optimizer.step_word(token, ck.tuned_embeddings.at(token), g);
      }
    }
    const double mean = total / static_cast<double>(n);
    if (!std::isfinite(mean)) {
      throw NonFiniteLoss("mean training loss is " + std::to_string(mean) + " at epoch " +
                          std::to_string(epoch));
    }
    ck.loss_history.push_back(mean);
    if (hook && !hook(epoch, mean, ck)) break;
  }
  return ck;
}

Checkpoint baseline_mlp(TrainConfig config, const InstanceSet& train, const EpochHook& hook) {
  config.model = Architecture::BaselineMlp;
  return sdplstm::train(config, train, hook);
}

Checkpoint baseline_rnn(TrainConfig config, const InstanceSet& train, const EpochHook& hook) {
  config.model = Architecture::BaselineRnn;
  return sdplstm::train(config, train, hook);
}

Prediction predict(const Checkpoint& ck, const SdpInstance& inst) {
  const auto* tuned = ck.tuned_embeddings.empty() ? nullptr : &ck.tuned_embeddings;
  const Vector probs = predict_proba(ck.model, ck.encoders.encode(inst, tuned));
  Prediction p;
  p.prob_positive = probs[1];
  p.label = p.prob_positive >= 0.5 ? Label::Interacting : Label::NonInteracting;
  return p;
}

FoldMetrics evaluate(const Checkpoint& ck, const std::vector<SdpInstance>& instances,
                     const std::vector<ExcludedInstance>& excluded, bool score_excluded) {
  std::vector<std::pair<Label, Label>> gold_pred;
  for (const auto& inst : instances) gold_pred.emplace_back(inst.label, predict(ck, inst).label);
  if (score_excluded) {
    for (const auto& ex : excluded) gold_pred.emplace_back(ex.label, Label::NonInteracting);
  }
  return count(gold_pred);
}

double accuracy(const Checkpoint& ck, const std::vector<SdpInstance>& instances) {
  if (instances.empty()) return 0.0;
  std::size_t right = 0;
  for (const auto& inst : instances) right += predict(ck, inst).label == inst.label;
  return static_cast<double>(right) / static_cast<double>(instances.size());
}

CvResult cross_validate(const TrainConfig& config, const InstanceSet& set, std::size_t jobs) {
  config.validate();
  std::vector<std::string> ids;
  for (const auto& inst : set.instances) ids.push_back(inst.id);
  for (const auto& ex : set.excluded) ids.push_back(ex.id);

  CvResult result;
  result.folds = split_folds(ids, config.k_folds, config.seed);
  const std::size_t k = result.folds.k;
  result.per_fold.resize(k);
  std::vector<std::exception_ptr> errors(k);

  auto run_fold = [&](std::size_t f) {
    InstanceSet train_set = set;
    train_set.instances.clear();
    train_set.excluded.clear();
    std::vector<SdpInstance> test;
    std::vector<ExcludedInstance> test_excluded;
    for (const auto& inst : set.instances) {
      (result.folds.fold_of(inst.id) == f ? test : train_set.instances).push_back(inst);
    }
    for (const auto& ex : set.excluded) {
      if (result.folds.fold_of(ex.id) == f) test_excluded.push_back(ex);
    }
    const Checkpoint ck = train(config, train_set);
    result.per_fold[f] = evaluate(ck, test, test_excluded, config.score_excluded);
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t f = next++; f < k; f = next++) {
      try {
        run_fold(f);
      } catch (...) {
        errors[f] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, k);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  result.micro = micro_average(result.per_fold);
  result.macro = macro_average(result.per_fold);
  return result;
}

std::string sweep(const TrainConfig& config, const InstanceSet& set, std::string_view param,
                  const std::vector<double>& values, std::size_t jobs) {
  if (param != "epochs" && param != "mlp_hidden" && param != "window") {
    throw ConfigError("cannot sweep '" + std::string(param) +
                      "'; expected epochs, mlp_hidden or window");
  }
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  std::ostringstream out;
  out << "param,value,tp,fp,fn,tn,precision,recall,f1\n";
  for (double raw : values) {
    const std::size_t v = sweep_value(param, raw);
    TrainConfig c = config;
    InstanceSet s = set;
    if (param == "epochs") {
      c.epochs = v;
    } else if (param == "mlp_hidden") {
      c.mlp_hidden = v;
    } else {
      c.position_window = v;
      s.window = v;
    }
    const CvResult cv = cross_validate(c, s, jobs);
    out << metrics_csv_row(std::string(param) + "," + std::to_string(v), cv.micro) << '\n';
  }
  return out.str();
}

}  // namespace sdplstm
