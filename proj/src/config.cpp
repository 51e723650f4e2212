#include "sdplstm/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

#include "sdplstm/error.hpp"
#include "sdplstm/features.hpp"
#include "text_util.hpp"

namespace sdplstm {

namespace {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

template <typename T>
T parse_as(std::string_view key, std::string_view value) {
  auto parsed = detail::parse_number<T>(value);
  if (!parsed) {
    throw ConfigError("bad value '" + std::string(value) + "' for key '" + std::string(key) + "'");
  }
  return *parsed;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("bad boolean '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

using Setter = std::function<void(TrainConfig&, std::string_view, std::string_view)>;

template <typename Member>
Setter number_setter(Member TrainConfig::*field) {
  return [field](TrainConfig& c, std::string_view k, std::string_view v) {
    c.*field = parse_as<Member>(k, v);
  };
}

Setter bool_setter(bool TrainConfig::*field) {
  return [field](TrainConfig& c, std::string_view k, std::string_view v) {
    c.*field = parse_bool(k, v);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"model", [](TrainConfig& c, std::string_view, std::string_view v) {
         c.model = parse_architecture(v);
       }},
      {"lstm_units", number_setter(&TrainConfig::lstm_units)},
      {"dropout", number_setter(&TrainConfig::dropout)},
      {"activation", [](TrainConfig& c, std::string_view, std::string_view v) {
         c.activation = parse_activation(v);
       }},
      {"optimizer", [](TrainConfig& c, std::string_view, std::string_view v) {
         c.optimizer = parse_optimizer(v);
       }},
      {"learning_rate", number_setter(&TrainConfig::learning_rate)},
      {"epochs", number_setter(&TrainConfig::epochs)},
      {"mlp_hidden", number_setter(&TrainConfig::mlp_hidden)},
      {"mlp_depth", number_setter(&TrainConfig::mlp_depth)},
      {"batch", number_setter(&TrainConfig::batch)},
      {"seed", number_setter(&TrainConfig::seed)},
      {"use_pos", bool_setter(&TrainConfig::use_pos)},
      {"use_position", bool_setter(&TrainConfig::use_position)},
      {"position_window", number_setter(&TrainConfig::position_window)},
      {"embedding_path", [](TrainConfig& c, std::string_view, std::string_view v) {
         c.embedding_path = std::string(v);
       }},
      {"embedding_dim", number_setter(&TrainConfig::embedding_dim)},
      {"oov_seed", number_setter(&TrainConfig::oov_seed)},
      {"k_folds", number_setter(&TrainConfig::k_folds)},
      {"fixed_length", number_setter(&TrainConfig::fixed_length)},
      {"autoencoder_epochs", number_setter(&TrainConfig::autoencoder_epochs)},
      {"tune_embeddings", bool_setter(&TrainConfig::tune_embeddings)},
      {"score_excluded", bool_setter(&TrainConfig::score_excluded)},
      {"max_sdp_tokens", number_setter(&TrainConfig::max_sdp_tokens)},
  };
  return table;
}

}  // namespace

std::string_view to_string(OptimizerKind k) {
  return k == OptimizerKind::Adam ? "adam" : "adadelta";
}

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "adam") return OptimizerKind::Adam;
  if (name == "adadelta") return OptimizerKind::Adadelta;
  throw ConfigError("unknown optimizer '" + std::string(name) + "' (adam|adadelta)");
}

void TrainConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (epochs < 1) fail("epochs must be at least 1");
  if (!(dropout >= 0.0 && dropout < 1.0)) fail("dropout must be in [0, 1)");
  if (position_window < kMinPositionWindow || position_window > kMaxPositionWindow) {
    fail("position_window must be in [5, 12]");
  }
  if (lstm_units == 0 || mlp_hidden == 0 || mlp_depth == 0) fail("layer sizes must be positive");
  if (batch == 0) fail("batch must be positive");
  if (!(learning_rate > 0.0)) fail("learning_rate must be positive");
  if (embedding_dim == 0) fail("embedding_dim must be positive");
  if (fixed_length == 0) fail("fixed_length must be positive");
  if (k_folds < 2) fail("k_folds must be at least 2");
  if (max_sdp_tokens < 2) fail("max_sdp_tokens must be at least 2");
}

void apply_setting(TrainConfig& config, std::string_view key, std::string_view value) {
  const auto& table = setters();
  auto it = table.find(key);
  if (it == table.end()) throw ConfigError("unknown key '" + std::string(key) + "'");
  it->second(config, key, value);
}

TrainConfig parse_config(std::istream& in) {
  TrainConfig config;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    }
    try {
      apply_setting(config, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  config.validate();
  return config;
}

TrainConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound(path.string());
  return parse_config(in);
}

std::string format_config(const TrainConfig& c) {
  std::ostringstream out;
  auto b = [](bool v) { return v ? "true" : "false"; };
  out << "model=" << to_string(c.model) << '\n'
      << "lstm_units=" << c.lstm_units << '\n'
      << "dropout=" << format_double(c.dropout) << '\n'
      << "activation=" << to_string(c.activation) << '\n'
      << "optimizer=" << to_string(c.optimizer) << '\n'
      << "learning_rate=" << format_double(c.learning_rate) << '\n'
      << "epochs=" << c.epochs << '\n'
      << "mlp_hidden=" << c.mlp_hidden << '\n'
      << "mlp_depth=" << c.mlp_depth << '\n'
      << "batch=" << c.batch << '\n'
      << "seed=" << c.seed << '\n'
      << "use_pos=" << b(c.use_pos) << '\n'
      << "use_position=" << b(c.use_position) << '\n'
      << "position_window=" << c.position_window << '\n'
      << "embedding_path=" << c.embedding_path << '\n'
      << "embedding_dim=" << c.embedding_dim << '\n'
      << "oov_seed=" << c.oov_seed << '\n'
      << "k_folds=" << c.k_folds << '\n'
      << "fixed_length=" << c.fixed_length << '\n'
      << "autoencoder_epochs=" << c.autoencoder_epochs << '\n'
      << "tune_embeddings=" << b(c.tune_embeddings) << '\n'
      << "score_excluded=" << b(c.score_excluded) << '\n'
      << "max_sdp_tokens=" << c.max_sdp_tokens << '\n';
  return out.str();
}

}  // namespace sdplstm
