#include <cstdint>
#include <cstring>
#include <fstream>

#include "varmap/checkpoint.hpp"
#include "varmap/graph.hpp"

namespace varmap::model {

namespace {

constexpr char kMagic[4] = {'V', 'M', 'C', 'P'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  out.write(b, 4);
}

void put_string(std::ostream& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::uint32_t get_u32(std::istream& in) {
  char b[4];
  in.read(b, 4);
  if (!in) throw checkpoint_error("checkpoint truncated");
  std::uint32_t v;
  std::memcpy(&v, b, 4);
  return v;
}

std::string get_string(std::istream& in) {
  std::uint32_t len = get_u32(in);
  if (len > (64u << 20)) throw checkpoint_error("checkpoint field too large");
  std::string s(len, '\0');
  in.read(s.data(), static_cast<std::streamsize>(len));
  if (!in) throw checkpoint_error("checkpoint truncated");
  return s;
}

}  // namespace

void save_checkpoint(const std::string& path, const ModelParams& params,
                     const std::string& meta_json) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw checkpoint_error("cannot open checkpoint for writing: " + path);
  out.write(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(params.hidden_dim));
  put_u32(out, params.edge_mask);
  const auto& vocab = graph::node_type_vocab();
  put_u32(out, static_cast<std::uint32_t>(vocab.size()));
  for (const auto& name : vocab) put_string(out, name);
  put_string(out, meta_json);

  auto tensors = named_tensors(params);
  put_u32(out, static_cast<std::uint32_t>(tensors.size()));
  for (const auto& [name, t] : tensors) {
    put_string(out, name);
    put_u32(out, static_cast<std::uint32_t>(t->rows));
    put_u32(out, static_cast<std::uint32_t>(t->cols));
    out.write(reinterpret_cast<const char*>(t->data.data()),
              static_cast<std::streamsize>(t->data.size() * sizeof(double)));
  }
  if (!out) throw checkpoint_error("checkpoint write failed: " + path);
}

LoadedCheckpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw checkpoint_error("cannot open checkpoint: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw checkpoint_error("not a checkpoint file: " + path);
  if (get_u32(in) != kVersion) throw checkpoint_error("unsupported checkpoint version");

  int hidden_dim = static_cast<int>(get_u32(in));
  unsigned edge_mask = get_u32(in);
  std::uint32_t vocab_size = get_u32(in);
  const auto& vocab = graph::node_type_vocab();
  if (vocab_size != vocab.size())
    throw vocab_mismatch_error("checkpoint vocabulary size differs from this build");
  for (const auto& expected : vocab)
    if (get_string(in) != expected)
      throw vocab_mismatch_error("checkpoint vocabulary differs from this build");

  LoadedCheckpoint loaded;
  loaded.meta_json = get_string(in);
  loaded.params = init_params(hidden_dim, edge_mask, /*seed=*/0);

  auto tensors = named_tensors(loaded.params);
  std::uint32_t n = get_u32(in);
  if (n != tensors.size()) throw checkpoint_error("unexpected parameter count");
  for (auto& [name, t] : tensors) {
    if (get_string(in) != name) throw checkpoint_error("unexpected parameter order");
    std::uint32_t rows = get_u32(in);
    std::uint32_t cols = get_u32(in);
    if (static_cast<int>(rows) != t->rows || static_cast<int>(cols) != t->cols)
      throw checkpoint_error("parameter shape mismatch for " + name);
    in.read(reinterpret_cast<char*>(t->data.data()),
            static_cast<std::streamsize>(t->data.size() * sizeof(double)));
    if (!in) throw checkpoint_error("checkpoint truncated in " + name);
  }
  return loaded;
}

}  // namespace varmap::model
