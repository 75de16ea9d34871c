#include "nnsel/neural/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "nnsel/error.hpp"

namespace nnsel::nn {

namespace {

constexpr char kMagic[8] = {'N', 'N', 'S', 'E', 'L', 'C', 'K', '1'};
constexpr std::uint32_t kVersion = 1;

template <typename U>
void put(std::string& out, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f32(std::string& out, float f) { put(out, std::bit_cast<std::uint32_t>(f)); }

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename U>
  U get() {
    if (pos_ + sizeof(U) > bytes_.size()) throw Error("truncated checkpoint");
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i)
      v |= static_cast<U>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += sizeof(U);
    return v;
  }
  float get_f32() { return std::bit_cast<float>(get<std::uint32_t>()); }
  std::string_view take(std::size_t n) {
    if (pos_ + n > bytes_.size()) throw Error("truncated checkpoint");
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string save_checkpoint(const Model& model) {
  const ModelConfig& c = model.config();
  std::string out(kMagic, sizeof(kMagic));
  put(out, kVersion);
  put(out, static_cast<std::uint32_t>(c.arch));
  for (std::uint32_t v : {c.vocab_size, c.dim, c.hidden, c.cnn_layers, c.cnn_patch, c.wavenet_blocks,
                          c.wavenet_layers, c.tree_layers, c.max_len})
    put(out, v);
  put_f32(out, c.token_dropout);
  put_f32(out, c.feature_dropout);
  put(out, c.vocab_hash);
  put(out, static_cast<std::uint32_t>(model.parameters().size()));
  for (const Parameter& p : model.parameters()) {
    put(out, static_cast<std::uint32_t>(p.value.size()));
    for (double v : p.value.data) put_f32(out, static_cast<float>(v));
  }
  return out;
}

Model load_checkpoint(std::string_view bytes, std::optional<std::uint64_t> expected_vocab_hash) {
  Reader r(bytes);
  if (r.take(sizeof(kMagic)) != std::string_view(kMagic, sizeof(kMagic))) throw Error("not a checkpoint");
  if (r.get<std::uint32_t>() != kVersion) throw Error("unsupported checkpoint version");
  ModelConfig c;
  std::uint32_t arch = r.get<std::uint32_t>();
  if (arch < 1 || arch > 4) throw Error("unknown architecture tag in checkpoint");
  c.arch = static_cast<Architecture>(arch);
  for (std::uint32_t* f : {&c.vocab_size, &c.dim, &c.hidden, &c.cnn_layers, &c.cnn_patch, &c.wavenet_blocks,
                           &c.wavenet_layers, &c.tree_layers, &c.max_len})
    *f = r.get<std::uint32_t>();
  c.token_dropout = r.get_f32();
  c.feature_dropout = r.get_f32();
  c.vocab_hash = r.get<std::uint64_t>();
  if (expected_vocab_hash && *expected_vocab_hash != c.vocab_hash)
    throw Error("checkpoint was trained with a different vocabulary");

  Model model = Model::zeros(c);
  if (r.get<std::uint32_t>() != model.parameters().size()) throw Error("checkpoint parameter count mismatch");
  for (Parameter& p : model.parameters()) {
    if (r.get<std::uint32_t>() != p.value.size()) throw Error("checkpoint parameter size mismatch: " + p.name);
    for (double& v : p.value.data) v = static_cast<double>(r.get_f32());
  }
  if (!r.done()) throw Error("trailing bytes after checkpoint");
  return model;
}

void save_checkpoint_file(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  const std::string bytes = save_checkpoint(model);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

Model load_checkpoint_file(const std::filesystem::path& path, std::optional<std::uint64_t> expected_vocab_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_checkpoint(buf.str(), expected_vocab_hash);
}

}  // namespace nnsel::nn
