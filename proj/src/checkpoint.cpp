#include "sdplstm/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "sdplstm/error.hpp"
#include "sdplstm/rng.hpp"

namespace sdplstm {

namespace {

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u16(std::uint16_t v) { le(v, 2); }
  void u64(std::uint64_t v) { le(v, 8); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u64(s.size());
    out_.append(s);
  }
  void values(std::span<const double> v) {
    u64(v.size());
    for (double d : v) f64(d);
  }
  void matrix(const Matrix& m) {
    u64(static_cast<std::uint64_t>(m.rows()));
    u64(static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.size(); ++i) f64(m.data()[i]);
  }
  void vector(const Vector& v) { values(flat(v)); }
  std::string& bytes() { return out_; }

 private:
  void le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : in_(bytes) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(le(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(le(2)); }
  std::uint64_t u64() { return le(8); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const std::uint64_t n = u64();
    need(n);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::size_t count() {
    const std::uint64_t n = u64();
    if (n > in_.size()) throw FormatError("checkpoint count field out of range");
    return static_cast<std::size_t>(n);
  }
  void values_into(std::span<double> dst) {
    if (count() != dst.size()) throw FormatError("checkpoint tensor size does not match shape");
    for (double& d : dst) d = f64();
  }
  Matrix matrix() {
    const std::size_t rows = count();
    const std::size_t cols = count();
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    need(8 * rows * cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = f64();
    return m;
  }
  Vector vector() {
    const std::size_t n = count();
    need(8 * n);
    Vector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = f64();
    return v;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::uint64_t n) const {
    if (n > in_.size() - pos_) throw FormatError("checkpoint payload ends early");
  }
  std::uint64_t le(int n) {
    need(static_cast<std::uint64_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
    }
    pos_ += static_cast<std::size_t>(n);
    return v;
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

void write_autoencoder(Writer& w, const Autoencoder& ae) {
  w.matrix(ae.encoder_weight);
  w.vector(ae.encoder_bias);
  w.matrix(ae.decoder_weight);
  w.vector(ae.decoder_bias);
}

Autoencoder read_autoencoder(Reader& r) {
  Autoencoder ae;
  ae.encoder_weight = r.matrix();
  ae.encoder_bias = r.vector();
  ae.decoder_weight = r.matrix();
  ae.decoder_bias = r.vector();
  const auto d = ae.encoder_bias.size();
  if (ae.encoder_weight.rows() != d || ae.encoder_weight.cols() != d ||
      ae.decoder_weight.rows() != d || ae.decoder_weight.cols() != d ||
      ae.decoder_bias.size() != d) {
    throw FormatError("autoencoder tensors disagree on dimension");
  }
  return ae;
}

void write_vector_map(Writer& w, const std::map<std::string, Vector>& m) {
  w.u64(m.size());
  for (const auto& [k, v] : m) {
    w.str(k);
    w.vector(v);
  }
}

std::map<std::string, Vector> read_vector_map(Reader& r) {
  std::map<std::string, Vector> m;
  const std::size_t n = r.count();
  for (std::size_t i = 0; i < n; ++i) {
    std::string key = r.str();
    m.emplace(std::move(key), r.vector());
  }
  return m;
}

std::string payload_of(const Checkpoint& ck) {
  Writer w;
  w.str(format_config(ck.config));

  const ModelShape& s = ck.model.shape;
  w.u8(static_cast<std::uint8_t>(s.architecture));
  w.u64(s.input_dim);
  w.u64(s.units);
  w.u64(s.mlp_hidden);
  w.u64(s.mlp_depth);
  w.u64(s.fixed_length);
  w.u8(static_cast<std::uint8_t>(s.activation));
  for (auto v : ck.model.views()) w.values(v);

  const FeatureEncoders& e = ck.encoders;
  w.u64(e.pos_table.entries().size());
  for (const auto& [tag, cls] : e.pos_table.entries()) {
    w.str(tag);
    w.u64(cls);
  }
  write_autoencoder(w, e.pos_autoencoder);
  write_autoencoder(w, e.position_autoencoder);
  w.u64(e.word_dim);
  w.u64(e.window);
  w.u8(e.use_pos ? 1 : 0);
  w.u8(e.use_position ? 1 : 0);

  w.u64(ck.oov_seed);
  write_vector_map(w, ck.special_vectors);
  write_vector_map(w, ck.tuned_embeddings);
  w.values(ck.loss_history);
  return std::move(w.bytes());
}

Checkpoint checkpoint_from_payload(std::string_view payload) {
  Reader r(payload);
  Checkpoint ck;
  std::istringstream config_text(r.str());
  ck.config = parse_config(config_text);

  ModelShape s;
  const auto arch = r.u8();
  if (arch > 2) throw FormatError("unknown architecture code");
  s.architecture = static_cast<Architecture>(arch);
  s.input_dim = r.count();
  s.units = r.count();
  s.mlp_hidden = r.count();
  s.mlp_depth = r.count();
  s.fixed_length = r.count();
  const auto act = r.u8();
  if (act > 2) throw FormatError("unknown activation code");
  s.activation = static_cast<Activation>(act);
  ck.model = ModelParams::zeros(s);
  for (auto v : ck.model.views()) r.values_into(v);

  std::map<std::string, std::size_t> table;
  const std::size_t tags = r.count();
  for (std::size_t i = 0; i < tags; ++i) {
    std::string tag = r.str();
    table.emplace(std::move(tag), r.count());
  }
  FeatureEncoders& e = ck.encoders;
  e.pos_table = PosClassTable(std::move(table));
  e.pos_autoencoder = read_autoencoder(r);
  e.position_autoencoder = read_autoencoder(r);
  e.word_dim = r.count();
  e.window = r.count();
  e.use_pos = r.u8() != 0;
  e.use_position = r.u8() != 0;

  ck.oov_seed = r.u64();
  ck.special_vectors = read_vector_map(r);
  ck.tuned_embeddings = read_vector_map(r);
  ck.loss_history.resize(r.count());
  for (double& l : ck.loss_history) l = r.f64();
  if (!r.done()) throw FormatError("trailing bytes in checkpoint payload");
  if (e.layout().total() != s.input_dim) {
    throw DimensionMismatch("checkpoint feature layout does not match model input");
  }
  return ck;
}

bool maps_equal(const std::map<std::string, Vector>& a, const std::map<std::string, Vector>& b) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second != ib->second) return false;
  }
  return true;
}

}  // namespace

TokenLayout FeatureEncoders::layout() const {
  return TokenLayout{word_dim, use_pos ? kPosClasses : 0, use_position ? window : 0};
}

std::vector<TokenVector> FeatureEncoders::encode(
    const SdpInstance& inst, const std::map<std::string, Vector>* tuned) const {
  const TokenLayout lay = layout();
  const std::size_t n = inst.length();
  const Vector empty(0);
  std::vector<TokenVector> xs;
  xs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vector* word = &inst.word_vectors[k];
    if (tuned) {
      if (auto it = tuned->find(inst.tokens[k]); it != tuned->end()) word = &it->second;
    }
    Vector pos = use_pos ? encode_dense(pos_autoencoder,
                                        encode_pos_onehot(pos_table.classify(inst.pos_tags[k]))
                                            .to_vector())
                         : empty;
    Vector p1 = empty, p2 = empty;
    if (use_position) {
      const auto [d1, d2] = relative_positions(k, n);
      p1 = encode_dense(position_autoencoder, encode_position(d1, window).to_vector());
      p2 = encode_dense(position_autoencoder, encode_position(d2, window).to_vector());
    }
    xs.push_back(assemble(lay, *word, pos, p1, p2));
  }
  return xs;
}

bool Checkpoint::operator==(const Checkpoint& o) const {
  return format_version == o.format_version && config == o.config && model == o.model &&
         encoders == o.encoders && oov_seed == o.oov_seed &&
         maps_equal(special_vectors, o.special_vectors) &&
         maps_equal(tuned_embeddings, o.tuned_embeddings) && loss_history == o.loss_history;
}

std::string serialize_checkpoint(const Checkpoint& ck) {
  const std::string payload = payload_of(ck);
  Writer w;
  w.bytes().append(kCheckpointMagic);
  w.u16(kCheckpointVersion);
  w.u64(payload.size());
  w.bytes().append(payload);
  w.u64(fnv1a64(payload));
  return std::move(w.bytes());
}

Checkpoint deserialize_checkpoint(std::string_view bytes) {
  constexpr std::size_t header = 4 + 2 + 8;
  if (bytes.size() >= 4 && bytes.substr(0, 4) != kCheckpointMagic) {
    throw FormatError("not a checkpoint file (bad magic)");
  }
  if (bytes.size() < 6) throw CorruptChecksum("file truncated inside the header");
  Reader head(bytes.substr(4, 2));
  const std::uint16_t version = head.u16();
  if (version != kCheckpointVersion) {
    throw VersionMismatch("checkpoint has format version " + std::to_string(version) +
                          ", this reader supports version " + std::to_string(kCheckpointVersion));
  }
  if (bytes.size() < header + 8) throw CorruptChecksum("file truncated inside the header");
  Reader len(bytes.substr(6, 8));
  const std::uint64_t size = len.u64();
  if (size != bytes.size() - header - 8) {
    throw CorruptChecksum("payload length " + std::to_string(size) + " but file holds " +
                          std::to_string(bytes.size() - header - 8) + " bytes");
  }
  const std::string_view payload = bytes.substr(header, size);
  Reader tail(bytes.substr(header + size, 8));
  if (tail.u64() != fnv1a64(payload)) throw CorruptChecksum("checksum mismatch");
  Checkpoint ck = checkpoint_from_payload(payload);
  ck.format_version = version;
  return ck;
}

void save_checkpoint(const Checkpoint& ck, const std::filesystem::path& path) {
  const std::string bytes = serialize_checkpoint(ck);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound(path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_checkpoint(bytes);
}

}  // namespace sdplstm
