#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sdplstm {

/// Confusion counts with precision/recall/F1 as percentages (0 on empty denominators).
struct FoldMetrics {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static FoldMetrics from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn);
  std::size_t total() const { return tp + fp + fn + tn; }
  bool operator==(const FoldMetrics&) const = default;
};

/// Harmonic mean of two percentages; 0 when both are 0.
double f1_score(double precision, double recall);

/// Pooled confusion counts across folds.
FoldMetrics micro_average(const std::vector<FoldMetrics>& folds);
/// Summed counts, with precision/recall/F1 averaged over folds.
FoldMetrics macro_average(const std::vector<FoldMetrics>& folds);

/// CSV with columns fold,tp,fp,fn,tn,precision,recall,f1; rows per fold then micro, macro.
std::string metrics_csv(const std::vector<FoldMetrics>& folds, const FoldMetrics& micro,
                        const FoldMetrics& macro);
std::string metrics_json(const std::vector<FoldMetrics>& folds, const FoldMetrics& micro,
                         const FoldMetrics& macro);
std::string metrics_csv_row(const std::string& fold, const FoldMetrics& m);

}  // namespace sdplstm
