#include "sdplstm/metrics.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace sdplstm {

namespace {

double percent(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

nlohmann::json to_json(const FoldMetrics& m) {
  return {{"tp", m.tp},
          {"fp", m.fp},
          {"fn", m.fn},
          {"tn", m.tn},
          {"precision", m.precision},
          {"recall", m.recall},
          {"f1", m.f1}};
}

}  // namespace

double f1_score(double precision, double recall) {
  const double sum = precision + recall;
  return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

FoldMetrics FoldMetrics::from_counts(std::size_t tp, std::size_t fp, std::size_t fn,
                                     std::size_t tn) {
  FoldMetrics m{tp, fp, fn, tn, 0.0, 0.0, 0.0};
  m.precision = percent(tp, tp + fp);
  m.recall = percent(tp, tp + fn);
  m.f1 = f1_score(m.precision, m.recall);
  return m;
}

FoldMetrics micro_average(const std::vector<FoldMetrics>& folds) {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (const auto& f : folds) {
    tp += f.tp;
    fp += f.fp;
    fn += f.fn;
    tn += f.tn;
  }
  return FoldMetrics::from_counts(tp, fp, fn, tn);
}

FoldMetrics macro_average(const std::vector<FoldMetrics>& folds) {
  FoldMetrics m = micro_average(folds);
  if (folds.empty()) return m;
  double p = 0.0, r = 0.0, f = 0.0;
  for (const auto& fold : folds) {
    p += fold.precision;
    r += fold.recall;
    f += fold.f1;
  }
  const auto n = static_cast<double>(folds.size());
  m.precision = p / n;
  m.recall = r / n;
  m.f1 = f / n;
  return m;
}

std::string metrics_csv_row(const std::string& fold, const FoldMetrics& m) {
  std::ostringstream out;
  out << fold << ',' << m.tp << ',' << m.fp << ',' << m.fn << ',' << m.tn << ','
      << fixed4(m.precision) << ',' << fixed4(m.recall) << ',' << fixed4(m.f1);
  return out.str();
}

std::string metrics_csv(const std::vector<FoldMetrics>& folds, const FoldMetrics& micro,
                        const FoldMetrics& macro) {
  std::ostringstream out;
  out << "fold,tp,fp,fn,tn,precision,recall,f1\n";
  for (std::size_t i = 0; i < folds.size(); ++i) {
    out << metrics_csv_row(std::to_string(i), folds[i]) << '\n';
  }
  out << metrics_csv_row("micro", micro) << '\n';
  out << metrics_csv_row("macro", macro) << '\n';
  return out.str();
}

std::string metrics_json(const std::vector<FoldMetrics>& folds, const FoldMetrics& micro,
                         const FoldMetrics& macro) {
  nlohmann::json j;
  j["folds"] = nlohmann::json::array();
  for (const auto& f : folds) j["folds"].push_back(to_json(f));
  j["micro"] = to_json(micro);
  j["macro"] = to_json(macro);
  return j.dump(2) + "\n";
}

}  // namespace sdplstm
