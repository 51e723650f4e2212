#include "sdplstm/model.hpp"

#include <algorithm>
#include <cmath>

#include "sdplstm/error.hpp"

namespace sdplstm {

namespace {

Matrix zero_matrix(std::size_t rows, std::size_t cols) {
  return Matrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

Vector zero_vector(std::size_t n) { return Vector::Zero(static_cast<Eigen::Index>(n)); }

void check_sequence(const ModelParams& m, const std::vector<Vector>& seq) {
  if (seq.empty()) throw EmptySequence("instance has no tokens");
  for (const auto& x : seq) {
    if (static_cast<std::size_t>(x.size()) != m.shape.input_dim) {
      throw DimensionMismatch("token vector of length " + std::to_string(x.size()) +
                              ", model expects " + std::to_string(m.shape.input_dim));
    }
  }
}

struct EncoderCache {
  LstmTrace forward;
  LstmTrace backward;
  std::vector<std::size_t> argmax;
  std::vector<Vector> rnn_hidden;
  Vector summary;
};

std::vector<Vector> rnn_states(const ModelParams& m, const std::vector<Vector>& seq) {
  std::vector<Vector> hidden;
  hidden.reserve(seq.size());
  Vector h = zero_vector(m.shape.units);
  for (const auto& x : seq) {
    h = sigmoid(Vector(m.rnn.input_weight * x + m.rnn.recurrent_weight * h + m.rnn.bias));
    hidden.push_back(h);
  }
  return hidden;
}

EncoderCache encode(const ModelParams& m, const std::vector<Vector>& seq) {
  check_sequence(m, seq);
  EncoderCache cache;
  switch (m.shape.architecture) {
    case Architecture::SdpLstm: {
      cache.forward = lstm_sequence(m.forward_lstm, seq, false);
      cache.backward = lstm_sequence(m.backward_lstm, seq, true);
      const auto u = static_cast<Eigen::Index>(m.shape.units);
      std::vector<Vector> z;
      z.reserve(seq.size());
      for (std::size_t k = 0; k < seq.size(); ++k) {
        Vector zk(2 * u);
        zk << cache.forward.hidden_at(k), cache.backward.hidden_at(k);
        z.push_back(std::move(zk));
      }
      cache.summary = max_pool(z, cache.argmax);
      break;
    }
    case Architecture::BaselineMlp: {
      const auto in = static_cast<Eigen::Index>(m.shape.input_dim);
      cache.summary = zero_vector(m.shape.summary_dim());
      const std::size_t used = std::min(seq.size(), m.shape.fixed_length);
      for (std::size_t k = 0; k < used; ++k) {
        cache.summary.segment(static_cast<Eigen::Index>(k) * in, in) = seq[k];
      }
      break;
    }
    case Architecture::BaselineRnn: {
      cache.rnn_hidden = rnn_states(m, seq);
      cache.summary = cache.rnn_hidden.back();
      break;
    }
  }
  return cache;
}

void encoder_backward(const ModelParams& m, const std::vector<Vector>& seq,
                      const EncoderCache& cache, const Vector& d_summary, ModelParams& grad,
                      std::vector<Vector>* d_inputs) {
  const std::size_t n = seq.size();
  switch (m.shape.architecture) {
    case Architecture::SdpLstm: {
      const auto u = static_cast<Eigen::Index>(m.shape.units);
      std::vector<Vector> d_fwd(n, Vector::Zero(u));
      std::vector<Vector> d_bwd(n, Vector::Zero(u));
      for (Eigen::Index i = 0; i < 2 * u; ++i) {
        const std::size_t k = cache.argmax[static_cast<std::size_t>(i)];
        if (i < u) {
          d_fwd[k][i] += d_summary[i];
        } else {
          d_bwd[k][i - u] += d_summary[i];
        }
      }
      lstm_sequence_backward(m.forward_lstm, seq, cache.forward, d_fwd, grad.forward_lstm,
                             d_inputs);
      lstm_sequence_backward(m.backward_lstm, seq, cache.backward, d_bwd, grad.backward_lstm,
                             d_inputs);
      break;
    }
    case Architecture::BaselineMlp: {
      if (!d_inputs) break;
      const auto in = static_cast<Eigen::Index>(m.shape.input_dim);
      const std::size_t used = std::min(n, m.shape.fixed_length);
      for (std::size_t k = 0; k < used; ++k) {
        (*d_inputs)[k] += d_summary.segment(static_cast<Eigen::Index>(k) * in, in);
      }
      break;
    }
    case Architecture::BaselineRnn: {
      const auto u = static_cast<Eigen::Index>(m.shape.units);
      Vector dh = d_summary;
      const Vector zero = Vector::Zero(u);
      for (std::size_t k = n; k-- > 0;) {
        const Vector& h = cache.rnn_hidden[k];
        const Vector& h_prev = k > 0 ? cache.rnn_hidden[k - 1] : zero;
        const Vector d_pre = (dh.array() * h.array() * (1.0 - h.array())).matrix();
        grad.rnn.input_weight.noalias() += d_pre * seq[k].transpose();
        grad.rnn.recurrent_weight.noalias() += d_pre * h_prev.transpose();
        grad.rnn.bias += d_pre;
        if (d_inputs) (*d_inputs)[k].noalias() += m.rnn.input_weight.transpose() * d_pre;
        dh.noalias() = m.rnn.recurrent_weight.transpose() * d_pre;
      }
      break;
    }
  }
}

struct HeadCache {
  Vector input;                  // summary after dropout
  std::vector<Vector> activated; // f(pre) per layer, before dropout
  std::vector<Vector> outputs;   // after dropout; outputs[l] feeds layer l+1
  Vector logits;
  Vector probs;
};

HeadCache head_forward(const ModelParams& m, const Vector& summary, const DropoutMasks* masks) {
  if (static_cast<std::size_t>(summary.size()) != m.shape.summary_dim()) {
    throw DimensionMismatch("summary of length " + std::to_string(summary.size()) +
                            ", head expects " + std::to_string(m.shape.summary_dim()));
  }
  HeadCache c;
  c.input = masks ? Vector(summary.cwiseProduct(masks->summary)) : summary;
  const Vector* in = &c.input;
  for (std::size_t l = 0; l < m.mlp_hidden.size(); ++l) {
    const Dense& layer = m.mlp_hidden[l];
    c.activated.push_back(activate(m.shape.activation, layer.weight * *in + layer.bias));
    c.outputs.push_back(masks ? Vector(c.activated.back().cwiseProduct(masks->hidden[l]))
                              : c.activated.back());
    in = &c.outputs.back();
  }
  c.logits = m.output_weight * *in;
  c.probs = softmax(c.logits);
  return c;
}

}  // namespace

std::string_view to_string(Architecture a) {
  switch (a) {
    case Architecture::SdpLstm: return "sdplstm";
    case Architecture::BaselineMlp: return "mlp";
    case Architecture::BaselineRnn: return "rnn";
  }
  return "?";
}

Architecture parse_architecture(std::string_view name) {
  if (name == "sdplstm") return Architecture::SdpLstm;
  if (name == "mlp") return Architecture::BaselineMlp;
  if (name == "rnn") return Architecture::BaselineRnn;
  throw ConfigError("unknown model '" + std::string(name) + "' (sdplstm|mlp|rnn)");
}

std::size_t ModelShape::summary_dim() const {
  switch (architecture) {
    case Architecture::SdpLstm: return 2 * units;
    case Architecture::BaselineMlp: return fixed_length * input_dim;
    case Architecture::BaselineRnn: return units;
  }
  return 0;
}

ModelParams ModelParams::zeros(const ModelShape& shape) {
  if (shape.input_dim == 0 || shape.units == 0 || shape.mlp_hidden == 0 ||
      shape.mlp_depth == 0 || shape.fixed_length == 0) {
    throw ConfigError("model dimensions must all be positive");
  }
  ModelParams m;
  m.shape = shape;
  if (shape.architecture == Architecture::SdpLstm) {
    m.forward_lstm = LstmParams::zeros(shape.input_dim, shape.units);
    m.backward_lstm = LstmParams::zeros(shape.input_dim, shape.units);
  } else {
    m.forward_lstm = m.backward_lstm = LstmParams::zeros(0, 0);
  }
  if (shape.architecture == Architecture::BaselineRnn) {
    m.rnn = RnnParams{zero_matrix(shape.units, shape.input_dim),
                      zero_matrix(shape.units, shape.units), zero_vector(shape.units)};
  } else {
    m.rnn = RnnParams{zero_matrix(0, 0), zero_matrix(0, 0), zero_vector(0)};
  }
  std::size_t in = shape.summary_dim();
  for (std::size_t l = 0; l < shape.mlp_depth; ++l) {
    m.mlp_hidden.push_back(Dense{zero_matrix(shape.mlp_hidden, in), zero_vector(shape.mlp_hidden)});
    in = shape.mlp_hidden;
  }
  m.output_weight = zero_matrix(kLabelCount, shape.mlp_hidden);
  return m;
}

ModelParams ModelParams::init(const ModelShape& shape, Rng& rng) {
  ModelParams m = zeros(shape);
  if (shape.architecture == Architecture::SdpLstm) {
    m.forward_lstm = LstmParams::glorot(shape.input_dim, shape.units, rng);
    m.backward_lstm = LstmParams::glorot(shape.input_dim, shape.units, rng);
  }
  if (shape.architecture == Architecture::BaselineRnn) {
    glorot_uniform(m.rnn.input_weight, rng);
    glorot_uniform(m.rnn.recurrent_weight, rng);
  }
  for (auto& layer : m.mlp_hidden) glorot_uniform(layer.weight, rng);
  glorot_uniform(m.output_weight, rng);
  return m;
}

ParamViews ModelParams::views() {
  ParamViews v;
  for (LstmParams* p : {&forward_lstm, &backward_lstm}) {
    v.push_back(flat(p->input_weight));
    v.push_back(flat(p->recurrent_weight));
    v.push_back(flat(p->bias));
  }
  v.push_back(flat(rnn.input_weight));
  v.push_back(flat(rnn.recurrent_weight));
  v.push_back(flat(rnn.bias));
  for (auto& layer : mlp_hidden) {
    v.push_back(flat(layer.weight));
    v.push_back(flat(layer.bias));
  }
  v.push_back(flat(output_weight));
  return v;
}

GradViews ModelParams::views() const {
  GradViews out;
  for (auto s : const_cast<ModelParams*>(this)->views()) out.emplace_back(s.data(), s.size());
  return out;
}

std::vector<std::string> ModelParams::tensor_names() const {
  std::vector<std::string> names;
  for (const char* dir : {"forward_lstm", "backward_lstm"}) {
    names.push_back(std::string(dir) + ".input_weight");
    names.push_back(std::string(dir) + ".recurrent_weight");
    names.push_back(std::string(dir) + ".bias");
  }
  names.insert(names.end(), {"rnn.input_weight", "rnn.recurrent_weight", "rnn.bias"});
  for (std::size_t l = 0; l < mlp_hidden.size(); ++l) {
    names.push_back("mlp" + std::to_string(l) + ".weight");
    names.push_back("mlp" + std::to_string(l) + ".bias");
  }
  names.push_back("output_weight");
  return names;
}

std::size_t ModelParams::parameter_count() const {
  std::size_t n = 0;
  for (auto v : views()) n += v.size();
  return n;
}

bool ModelParams::operator==(const ModelParams& o) const {
  if (!(shape == o.shape) || mlp_hidden.size() != o.mlp_hidden.size()) return false;
  auto a = views();
  auto b = o.views();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::equal(a[i].begin(), a[i].end(), b[i].begin(), b[i].end())) return false;
  }
  return true;
}

DropoutMasks draw_dropout(const ModelShape& shape, double rate, Rng& rng) {
  DropoutMasks masks;
  masks.summary = dropout_mask(shape.summary_dim(), rate, rng);
  for (std::size_t l = 0; l < shape.mlp_depth; ++l) {
    masks.hidden.push_back(dropout_mask(shape.mlp_hidden, rate, rng));
  }
  return masks;
}

std::vector<Vector> bilstm_forward(const ModelParams& m, const std::vector<Vector>& seq) {
  if (m.shape.architecture != Architecture::SdpLstm) {
    throw ConfigError("bilstm_forward needs an sdplstm model");
  }
  check_sequence(m, seq);
  const LstmTrace fwd = lstm_sequence(m.forward_lstm, seq, false);
  const LstmTrace bwd = lstm_sequence(m.backward_lstm, seq, true);
  const auto u = static_cast<Eigen::Index>(m.shape.units);
  std::vector<Vector> z;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    Vector zk(2 * u);
    zk << fwd.hidden_at(k), bwd.hidden_at(k);
    z.push_back(std::move(zk));
  }
  return z;
}

Vector encode_sequence(const ModelParams& m, const std::vector<Vector>& seq) {
  return encode(m, seq).summary;
}

HeadOutput mlp_head(const ModelParams& m, const Vector& summary) {
  HeadCache c = head_forward(m, summary, nullptr);
  return HeadOutput{std::move(c.outputs), std::move(c.logits), std::move(c.probs)};
}

Vector predict_proba(const ModelParams& m, const std::vector<Vector>& seq) {
  return head_forward(m, encode(m, seq).summary, nullptr).probs;
}

double instance_loss(const ModelParams& m, const std::vector<Vector>& seq, int label) {
  return cross_entropy(predict_proba(m, seq)[1], label);
}

double backward(const ModelParams& m, const std::vector<Vector>& seq, int label,
                const DropoutMasks* masks, ModelParams& grad, std::vector<Vector>* d_inputs) {
  const EncoderCache enc = encode(m, seq);
  const HeadCache head = head_forward(m, enc.summary, masks);
  const double a = head.probs[1];
  const double loss = cross_entropy(a, label);
  if (!std::isfinite(loss)) throw NonFiniteLoss("instance loss is not finite");

  // d(-log p_label)/dT = probs - onehot(label); zero where the clamp is active.
  Vector d_logits = Vector::Zero(static_cast<Eigen::Index>(kLabelCount));
  if (a > kProbClamp && a < 1.0 - kProbClamp) {
    d_logits = head.probs;
    d_logits[label] -= 1.0;
  }

  const Vector& last = head.outputs.empty() ? head.input : head.outputs.back();
  grad.output_weight.noalias() += d_logits * last.transpose();
  Vector d_out = m.output_weight.transpose() * d_logits;
  for (std::size_t l = m.mlp_hidden.size(); l-- > 0;) {
    if (masks) d_out = d_out.cwiseProduct(masks->hidden[l]);
    const Vector d_pre =
        d_out.cwiseProduct(activation_grad(m.shape.activation, head.activated[l]));
    const Vector& in = l > 0 ? head.outputs[l - 1] : head.input;
    grad.mlp_hidden[l].weight.noalias() += d_pre * in.transpose();
    grad.mlp_hidden[l].bias += d_pre;
    d_out = m.mlp_hidden[l].weight.transpose() * d_pre;
  }
  if (masks) d_out = d_out.cwiseProduct(masks->summary);

  if (d_inputs) d_inputs->assign(seq.size(), Vector::Zero(static_cast<Eigen::Index>(m.shape.input_dim)));
  encoder_backward(m, seq, enc, d_out, grad, d_inputs);

  for (auto v : grad.views()) {
    for (double g : v) {
      if (!std::isfinite(g)) throw NonFiniteGradient("gradient contains NaN or infinity");
    }
  }
  return loss;
}

}  // namespace sdplstm
