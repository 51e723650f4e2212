#include "sdplstm/features.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

#include "sdplstm/error.hpp"
#include "text_util.hpp"

namespace sdplstm {

namespace {

using enum CoarsePos;

// Keep in sync with data/pos_classes.tsv.
const std::map<std::string, std::size_t>& penn_entries() {
  static const std::map<std::string, std::size_t> table = [] {
    std::map<std::string, std::size_t> t;
    auto put = [&](std::initializer_list<const char*> tags, CoarsePos c) {
      for (const char* tag : tags) t.emplace(tag, static_cast<std::size_t>(c));
    };
    put({"NN", "NNS", "NNP", "NNPS"}, Noun);
    put({"VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "MD"}, Verb);
    put({"JJ", "JJR", "JJS"}, Adjective);
    put({"RB", "RBR", "RBS", "WRB"}, Adverb);
    put({"IN", "RP", "TO"}, Preposition);
    put({"CC"}, Conjunction);
    put({"DT", "PDT", "WDT", "PRP", "PRP$", "WP", "WP$", "EX", "CD"}, Determiner);
    return t;
  }();
  return table;
}

Matrix stack(const std::vector<Vector>& samples, std::size_t d) {
  Matrix x(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(samples.size()));
  for (std::size_t j = 0; j < samples.size(); ++j) {
    if (static_cast<std::size_t>(samples[j].size()) != d) {
      throw DimensionMismatch("sample " + std::to_string(j) + " has dimension " +
                              std::to_string(samples[j].size()) + ", expected " +
                              std::to_string(d));
    }
    x.col(static_cast<Eigen::Index>(j)) = samples[j];
  }
  return x;
}

Matrix sigmoid_matrix(const Matrix& m) {
  return m.unaryExpr([](double v) { return sigmoid(v); });
}

}  // namespace

PosClassTable::PosClassTable(std::map<std::string, std::size_t> entries)
    : entries_(std::move(entries)) {
  for (const auto& [tag, cls] : entries_) {
    if (cls >= kPosClasses) {
      throw InputError("PoS class " + std::to_string(cls) + " for tag '" + tag +
                       "' outside [0, 8)");
    }
  }
}

PosClassTable PosClassTable::penn_default() { return PosClassTable(penn_entries()); }

PosClassTable PosClassTable::parse(std::istream& in) {
  std::map<std::string, std::size_t> entries;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = detail::strip_cr(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fields = detail::split(line, '\t');
    auto cls = fields.size() == 2 ? detail::parse_number<std::size_t>(fields[1]) : std::nullopt;
    if (!cls || fields[0].empty()) {
      throw ParseError(line_no, "expected tag<TAB>class_index");
    }
    if (*cls >= kPosClasses) throw ParseError(line_no, "class index must be in [0, 8)");
    if (!entries.emplace(std::string(fields[0]), *cls).second) {
      throw ParseError(line_no, "tag '" + std::string(fields[0]) + "' listed twice");
    }
  }
  return PosClassTable(std::move(entries));
}

PosClassTable PosClassTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound(path.string());
  return parse(in);
}

std::size_t PosClassTable::classify(std::string_view tag) const {
  auto it = entries_.find(std::string(tag));
  return it == entries_.end() ? static_cast<std::size_t>(Other) : it->second;
}

void PosClassTable::write(std::ostream& out) const {
  for (const auto& [tag, cls] : entries_) out << tag << '\t' << cls << '\n';
}

std::size_t coarse_pos(std::string_view tag) {
  static const PosClassTable table = PosClassTable::penn_default();
  return table.classify(tag);
}

std::string PosOneHot::to_string() const {
  std::string s;
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

Vector PosOneHot::to_vector() const {
  Vector v(static_cast<Eigen::Index>(kPosClasses));
  for (std::size_t i = 0; i < kPosClasses; ++i) v[static_cast<Eigen::Index>(i)] = bits[i];
  return v;
}

std::string PositionCode::to_string() const {
  std::string s;
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

Vector PositionCode::to_vector() const {
  Vector v(static_cast<Eigen::Index>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) v[static_cast<Eigen::Index>(i)] = bits[i];
  return v;
}

std::size_t PositionCode::popcount() const {
  std::size_t n = 0;
  for (auto b : bits) n += b;
  return n;
}

PosOneHot encode_pos_onehot(std::size_t class_index) {
  if (class_index >= kPosClasses) {
    throw IndexOutOfRange("PoS class " + std::to_string(class_index));
  }
  PosOneHot code;
  code.bits[class_index] = 1;
  return code;
}

PositionCode encode_position(long rel_distance, std::size_t window) {
  if (window < kMinPositionWindow || window > kMaxPositionWindow) {
    throw InputError("position window " + std::to_string(window) + " outside [" +
                     std::to_string(kMinPositionWindow) + ", " +
                     std::to_string(kMaxPositionWindow) + "]");
  }
  const auto magnitude = static_cast<std::size_t>(std::labs(rel_distance));
  const std::size_t ones = std::min(magnitude, window);
  PositionCode code;
  code.bits.assign(window, 0);
  for (std::size_t i = window - ones; i < window; ++i) code.bits[i] = 1;
  return code;
}

Autoencoder Autoencoder::zeros(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return Autoencoder{Matrix::Zero(n, n), Vector::Zero(n), Matrix::Zero(n, n), Vector::Zero(n)};
}

bool Autoencoder::operator==(const Autoencoder& other) const {
  return encoder_weight == other.encoder_weight && encoder_bias == other.encoder_bias &&
         decoder_weight == other.decoder_weight && decoder_bias == other.decoder_bias;
}

Vector encode_dense(const Autoencoder& ae, const Vector& bits) {
  if (static_cast<std::size_t>(bits.size()) != ae.dim()) {
    throw DimensionMismatch("autoencoder of dimension " + std::to_string(ae.dim()) +
                            " given input of dimension " + std::to_string(bits.size()));
  }
  return sigmoid(Vector(ae.encoder_weight * bits + ae.encoder_bias));
}

Vector reconstruct(const Autoencoder& ae, const Vector& bits) {
  Vector z = encode_dense(ae, bits);
  return sigmoid(Vector(ae.decoder_weight * z + ae.decoder_bias));
}

double reconstruction_loss(const Autoencoder& ae, const std::vector<Vector>& samples) {
  if (samples.empty()) return 0.0;
  const Matrix x = stack(samples, ae.dim());
  const Matrix z = sigmoid_matrix((ae.encoder_weight * x).colwise() + ae.encoder_bias);
  const Matrix y = sigmoid_matrix((ae.decoder_weight * z).colwise() + ae.decoder_bias);
  return (y - x).squaredNorm() / static_cast<double>(x.size());
}

AutoencoderFit train_autoencoder(const std::vector<Vector>& samples, std::size_t d,
                                 std::uint64_t seed, const AutoencoderOptions& options) {
  if (samples.empty()) throw InputError("train_autoencoder needs at least one sample");
  const Matrix x = stack(samples, d);
  // Gradient of the summed squared error. Adadelta's epsilon is absolute, so
  // the per-component mean would leave the first few hundred steps near 1e-3.
  const double scale = 2.0;

  Rng rng(seed);
  AutoencoderFit fit;
  Autoencoder& ae = fit.model;
  ae = Autoencoder::zeros(d);
  glorot_uniform(ae.encoder_weight, rng);
  glorot_uniform(ae.decoder_weight, rng);

  const auto n = static_cast<Eigen::Index>(d);
  Matrix g_enc_w(n, n), g_dec_w(n, n);
  Vector g_enc_b(n), g_dec_b(n);
  AdadeltaState state{options.adadelta, {}, {}, 0};
  const ParamViews params{flat(ae.encoder_weight), flat(ae.encoder_bias),
                          flat(ae.decoder_weight), flat(ae.decoder_bias)};
  const GradViews grads{flat(std::as_const(g_enc_w)), flat(std::as_const(g_enc_b)),
                        flat(std::as_const(g_dec_w)), flat(std::as_const(g_dec_b))};

  fit.losses.reserve(options.epochs);
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    const Matrix z = sigmoid_matrix((ae.encoder_weight * x).colwise() + ae.encoder_bias);
    const Matrix y = sigmoid_matrix((ae.decoder_weight * z).colwise() + ae.decoder_bias);
    const double loss = (y - x).squaredNorm() / static_cast<double>(x.size());
    if (!std::isfinite(loss)) throw NonFiniteLoss("autoencoder loss at epoch " +
                                                  std::to_string(epoch + 1));
    fit.losses.push_back(loss);

    const Matrix d_dec = ((y - x) * scale).cwiseProduct(y.cwiseProduct((1.0 - y.array()).matrix()));
    g_dec_w = d_dec * z.transpose();
    g_dec_b = d_dec.rowwise().sum();
    const Matrix d_enc = (ae.decoder_weight.transpose() * d_dec)
                             .cwiseProduct(z.cwiseProduct((1.0 - z.array()).matrix()));
    g_enc_w = d_enc * x.transpose();
    g_enc_b = d_enc.rowwise().sum();
    adadelta_step(state, params, grads);
  }
  return fit;
}

}  // namespace sdplstm
