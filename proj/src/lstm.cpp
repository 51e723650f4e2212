#include "sdplstm/lstm.hpp"

#include "sdplstm/error.hpp"

namespace sdplstm {

namespace {

void check_step(const LstmParams& p, const Vector& x, const Vector& h_prev, const Vector& c_prev) {
  const auto u = static_cast<Eigen::Index>(p.units());
  if (x.size() != p.input_weight.cols() || h_prev.size() != u || c_prev.size() != u) {
    throw DimensionMismatch("lstm_cell with input " + std::to_string(x.size()) + ", state " +
                            std::to_string(h_prev.size()) + "/" + std::to_string(c_prev.size()) +
                            "; expects " + std::to_string(p.input_weight.cols()) + " and " +
                            std::to_string(u));
  }
  if (!x.allFinite() || !h_prev.allFinite() || !c_prev.allFinite()) {
    throw NonFiniteInput("lstm_cell input contains NaN or infinity");
  }
}

// Activated gates [i; f; o; u] for one step.
Vector gate_activations(const LstmParams& p, const Vector& x, const Vector& h_prev) {
  const auto u = static_cast<Eigen::Index>(p.units());
  Vector pre = p.input_weight * x + p.recurrent_weight * h_prev + p.bias;
  Vector act(4 * u);
  act.head(3 * u) = sigmoid(Vector(pre.head(3 * u)));
  act.tail(u) = pre.tail(u).array().tanh().matrix();
  return act;
}

}  // namespace

LstmParams LstmParams::zeros(std::size_t input_dim, std::size_t units) {
  const auto in = static_cast<Eigen::Index>(input_dim);
  const auto u = static_cast<Eigen::Index>(units);
  return LstmParams{Matrix::Zero(4 * u, in), Matrix::Zero(4 * u, u), Vector::Zero(4 * u)};
}

LstmParams LstmParams::glorot(std::size_t input_dim, std::size_t units, Rng& rng) {
  LstmParams p = zeros(input_dim, units);
  for (Gate g : {Gate::Input, Gate::Forget, Gate::Output, Gate::Update}) {
    Matrix w_in(static_cast<Eigen::Index>(units), static_cast<Eigen::Index>(input_dim));
    Matrix w_rec(static_cast<Eigen::Index>(units), static_cast<Eigen::Index>(units));
    glorot_uniform(w_in, rng);
    glorot_uniform(w_rec, rng);
    p.input_block(g) = w_in;
    p.recurrent_block(g) = w_rec;
  }
  p.bias_block(Gate::Forget).setOnes();
  return p;
}

LstmState lstm_cell(const LstmParams& p, const Vector& x, const Vector& h_prev,
                    const Vector& c_prev) {
  check_step(p, x, h_prev, c_prev);
  const auto u = static_cast<Eigen::Index>(p.units());
  const Vector act = gate_activations(p, x, h_prev);
  const auto i = act.segment(0, u).array();
  const auto f = act.segment(u, u).array();
  const auto o = act.segment(2 * u, u).array();
  const auto cand = act.segment(3 * u, u).array();
  LstmState out;
  out.c = (i * cand + f * c_prev.array()).matrix();
  out.h = (o * out.c.array().tanh()).matrix();
  return out;
}

LstmTrace lstm_sequence(const LstmParams& p, const std::vector<Vector>& xs, bool reversed) {
  if (xs.empty()) throw EmptySequence("LSTM over an empty sequence");
  const auto u = static_cast<Eigen::Index>(p.units());
  const std::size_t n = xs.size();
  LstmTrace trace;
  trace.reversed = reversed;
  trace.gates.reserve(n);
  trace.cells.reserve(n);
  trace.hidden.reserve(n);
  Vector h = Vector::Zero(u);
  Vector c = Vector::Zero(u);
  for (std::size_t t = 0; t < n; ++t) {
    const Vector& x = xs[reversed ? n - 1 - t : t];
    check_step(p, x, h, c);
    Vector act = gate_activations(p, x, h);
    c = (act.segment(0, u).array() * act.segment(3 * u, u).array() +
         act.segment(u, u).array() * c.array())
            .matrix();
    h = (act.segment(2 * u, u).array() * c.array().tanh()).matrix();
    trace.gates.push_back(std::move(act));
    trace.cells.push_back(c);
    trace.hidden.push_back(h);
  }
  return trace;
}

void lstm_sequence_backward(const LstmParams& p, const std::vector<Vector>& xs,
                            const LstmTrace& trace, const std::vector<Vector>& d_hidden,
                            LstmParams& grad, std::vector<Vector>* d_inputs) {
  const auto u = static_cast<Eigen::Index>(p.units());
  const std::size_t n = xs.size();
  Vector dh_next = Vector::Zero(u);
  Vector dc_next = Vector::Zero(u);
  Vector d_pre(4 * u);
  const Vector zero = Vector::Zero(u);

  for (std::size_t t = n; t-- > 0;) {
    const std::size_t pos = trace.reversed ? n - 1 - t : t;
    const Vector& x = xs[pos];
    const Vector& act = trace.gates[t];
    const Vector& c = trace.cells[t];
    const Vector& c_prev = t > 0 ? trace.cells[t - 1] : zero;
    const Vector& h_prev = t > 0 ? trace.hidden[t - 1] : zero;

    const auto i = act.segment(0, u).array();
    const auto f = act.segment(u, u).array();
    const auto o = act.segment(2 * u, u).array();
    const auto cand = act.segment(3 * u, u).array();
    const Eigen::ArrayXd tanh_c = c.array().tanh();

    const Eigen::ArrayXd dh = d_hidden[pos].array() + dh_next.array();
    const Eigen::ArrayXd dc = dc_next.array() + dh * o * (1.0 - tanh_c.square());

    d_pre.segment(0, u) = (dc * cand * i * (1.0 - i)).matrix();
    d_pre.segment(u, u) = (dc * c_prev.array() * f * (1.0 - f)).matrix();
    d_pre.segment(2 * u, u) = (dh * tanh_c * o * (1.0 - o)).matrix();
    d_pre.segment(3 * u, u) = (dc * i * (1.0 - cand.square())).matrix();

    grad.input_weight.noalias() += d_pre * x.transpose();
    grad.recurrent_weight.noalias() += d_pre * h_prev.transpose();
    grad.bias += d_pre;
    if (d_inputs) (*d_inputs)[pos].noalias() += p.input_weight.transpose() * d_pre;

    dh_next.noalias() = p.recurrent_weight.transpose() * d_pre;
    dc_next = (dc * f).matrix();
  }
}

}  // namespace sdplstm
