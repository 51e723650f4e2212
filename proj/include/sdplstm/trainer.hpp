#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "sdplstm/checkpoint.hpp"
#include "sdplstm/config.hpp"
#include "sdplstm/corpus.hpp"
#include "sdplstm/instances.hpp"
#include "sdplstm/metrics.hpp"

namespace sdplstm {

/// Called after every epoch with the epoch number (1-based), the mean
/// training loss and the current model. Returning false stops training.
using EpochHook =
    std::function<bool(std::size_t epoch, double mean_loss, const Checkpoint& current)>;

/// Autoencoders trained on the distinct PoS and position codes of `train` only.
FeatureEncoders fit_encoders(const TrainConfig& config, const InstanceSet& train);

/// Mini-batch training of config.model on every instance of `train`.
/// Feature flags are the conjunction of the config's and the instance file's;
/// the position window comes from the instance file.
Checkpoint train(const TrainConfig& config, const InstanceSet& train,
                 const EpochHook& hook = {});

/// train() with the architecture forced to the concatenation / RNN baselines.
Checkpoint baseline_mlp(TrainConfig config, const InstanceSet& train, const EpochHook& hook = {});
Checkpoint baseline_rnn(TrainConfig config, const InstanceSet& train, const EpochHook& hook = {});

struct Prediction {
  Label label = Label::NonInteracting;
  double prob_positive = 0.0;
};

/// Interacting iff prob_positive >= 0.5. Dropout is off.
Prediction predict(const Checkpoint& ck, const SdpInstance& inst);

/// Confusion counts over `instances`; excluded pairs count as NonInteracting
/// predictions when score_excluded is set and are ignored otherwise.
FoldMetrics evaluate(const Checkpoint& ck, const std::vector<SdpInstance>& instances,
                     const std::vector<ExcludedInstance>& excluded = {},
                     bool score_excluded = true);

struct CvResult {
  FoldAssignment folds;
  std::vector<FoldMetrics> per_fold;
  FoldMetrics micro;
  FoldMetrics macro;
};

/// k-fold cross-validation. Instances and exclusions are split together, so
/// every generated candidate lands in exactly one held-out fold. Folds run on
/// up to `jobs` threads; results do not depend on `jobs`.
CvResult cross_validate(const TrainConfig& config, const InstanceSet& set, std::size_t jobs = 1);

/// One cross-validation run per value of `param` (epochs, mlp_hidden or
/// window). CSV columns: param,value,tp,fp,fn,tn,precision,recall,f1 (micro).
std::string sweep(const TrainConfig& config, const InstanceSet& set, std::string_view param,
                  const std::vector<double>& values, std::size_t jobs = 1);

/// Fraction of instances whose predicted label equals the gold label.
double accuracy(const Checkpoint& ck, const std::vector<SdpInstance>& instances);

}  // namespace sdplstm
