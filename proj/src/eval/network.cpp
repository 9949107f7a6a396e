// Copyright 2026 The Penumbral Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "penumbral/eval/network.hpp"

#include <zlib.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <regex>

#include "penumbral/eval/action_index.hpp"
#include "penumbral/simd/kernels.hpp"

namespace penumbral {

std::size_t Tensor::elements() const {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

namespace {

constexpr char kMagic[] = "PNBW1";
constexpr std::size_t kMagicBytes = 5;

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& b, std::size_t end) : bytes_(b), end_(end) {}
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::string text(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  void floats(float* out, std::size_t n) {
    need(n * 4);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t bits = u32();
      std::memcpy(&out[i], &bits, 4);
    }
  }
  void skip(std::size_t n) { need(n), pos_ += n; }
  std::size_t pos() const { return pos_; }

 private:
  void need(std::size_t n) const {
    if (n > end_ - pos_) throw WeightError(WeightError::Kind::kFormat, "weight file truncated");
  }
  const std::vector<std::uint8_t>& bytes_;
  std::size_t end_;
  std::size_t pos_ = 0;
};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t crc_of(const std::uint8_t* data, std::size_t n) {
  return static_cast<std::uint32_t>(crc32(0L, data, static_cast<uInt>(n)));
}

}  // namespace

TensorMap parse_weights(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kMagicBytes + 8 || std::memcmp(bytes.data(), kMagic, kMagicBytes) != 0) {
    // A short file with the right magic is a truncation, which the CRC reports.
    if (bytes.size() >= kMagicBytes && std::memcmp(bytes.data(), kMagic, kMagicBytes) == 0) {
      throw WeightError(WeightError::Kind::kCrc, "weight file truncated before checksum");
    }
    throw WeightError(WeightError::Kind::kFormat, "not a PNBW1 weight file");
  }
  const std::size_t body = bytes.size() - 4;
  Reader crc_reader(bytes, bytes.size());
  crc_reader.skip(body);
  if (crc_reader.u32() != crc_of(bytes.data(), body)) {
    throw WeightError(WeightError::Kind::kCrc, "weight file checksum mismatch");
  }
  Reader r(bytes, body);
  r.skip(kMagicBytes);
  const std::uint32_t count = r.u32();
  TensorMap out;
  for (std::uint32_t t = 0; t < count; ++t) {
    const std::string name = r.text(r.u32());
    Tensor tensor;
    const std::uint32_t rank = r.u32();
    if (rank > 8) throw WeightError(WeightError::Kind::kFormat, "tensor rank too large: " + name);
    for (std::uint32_t i = 0; i < rank; ++i) tensor.dims.push_back(r.u32());
    const std::size_t n = tensor.elements();
    if (n > (body - r.pos()) / 4) {
      throw WeightError(WeightError::Kind::kFormat, "tensor data truncated: " + name);
    }
    tensor.data.resize(n);
    r.floats(tensor.data.data(), n);
    if (!out.emplace(name, std::move(tensor)).second) {
      throw WeightError(WeightError::Kind::kFormat, "duplicate tensor: " + name);
    }
  }
  if (r.pos() != body) throw WeightError(WeightError::Kind::kFormat, "trailing bytes");
  return out;
}

TensorMap read_weights(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WeightError(WeightError::Kind::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return parse_weights(bytes);
}

std::vector<std::uint8_t> serialize_weights(const TensorMap& tensors) {
  std::vector<std::uint8_t> out(kMagic, kMagic + kMagicBytes);
  put_u32(out, static_cast<std::uint32_t>(tensors.size()));
  for (const auto& [name, t] : tensors) {
    put_u32(out, static_cast<std::uint32_t>(name.size()));
    out.insert(out.end(), name.begin(), name.end());
    put_u32(out, static_cast<std::uint32_t>(t.dims.size()));
    for (auto d : t.dims) put_u32(out, d);
    for (float v : t.data) {
      std::uint32_t bits;
      std::memcpy(&bits, &v, 4);
      put_u32(out, bits);
    }
  }
  put_u32(out, crc_of(out.data(), out.size()));
  return out;
}

void write_weights(const std::filesystem::path& path, const TensorMap& tensors) {
  const auto bytes = serialize_weights(tensors);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw WeightError(WeightError::Kind::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

namespace {

const Tensor& require(const TensorMap& m, const std::string& name,
                      std::vector<std::uint32_t> dims) {
  const auto it = m.find(name);
  if (it == m.end()) throw WeightError(WeightError::Kind::kMissingTensor, "missing tensor " + name);
  if (it->second.dims != dims) {
    std::string want, got;
    for (auto d : dims) want += std::to_string(d) + " ";
    for (auto d : it->second.dims) got += std::to_string(d) + " ";
    throw WeightError(WeightError::Kind::kShape,
                      "tensor " + name + " has shape [" + got + "], expected [" + want + "]");
  }
  return it->second;
}

// 3x3 (or 1x1) same-padded convolution over an 8x8 board, via im2col.
void conv(int out_ch, int in_ch, int k, const float* weight, const float* bias, const float* in,
          float* out, bool relu) {
  thread_local std::vector<float> cols;
  const float* b_matrix = in;
  if (k == 3) {
    cols.assign(static_cast<std::size_t>(in_ch) * 9 * 64, 0.0f);
    for (int c = 0; c < in_ch; ++c) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          float* row = &cols[(static_cast<std::size_t>(c) * 9 + (dy + 1) * 3 + (dx + 1)) * 64];
          for (int r = 0; r < 8; ++r) {
            const int rr = r + dy;
            if (rr < 0 || rr > 7) continue;
            for (int f = 0; f < 8; ++f) {
              const int ff = f + dx;
              if (ff < 0 || ff > 7) continue;
              row[r * 8 + f] = in[c * 64 + rr * 8 + ff];
            }
          }
        }
      }
    }
    b_matrix = cols.data();
  }
  for (int o = 0; o < out_ch; ++o) {
    for (int s = 0; s < 64; ++s) out[o * 64 + s] = bias[o];
  }
  simd::sgemm(out_ch, 64, in_ch * k * k, weight, b_matrix, out, true);
  if (relu) {
    for (int i = 0; i < out_ch * 64; ++i) out[i] = std::max(out[i], 0.0f);
  }
}

void dense(int out_n, int in_n, const float* weight, const float* bias, const float* in,
           float* out) {
  for (int o = 0; o < out_n; ++o) {
    double acc = bias[o];
    for (int i = 0; i < in_n; ++i) acc += static_cast<double>(weight[o * in_n + i]) * in[i];
    out[o] = static_cast<float>(acc);
  }
}

float sigmoid(float x) { return 1.0f / (1.0f + std::exp(-x)); }

}  // namespace

NetworkEvaluator::NetworkEvaluator(TensorMap tensors) : tensors_(std::move(tensors)) {
  const auto stem_it = tensors_.find("stem.weight");
  if (stem_it == tensors_.end()) {
    throw WeightError(WeightError::Kind::kMissingTensor, "missing tensor stem.weight");
  }
  if (stem_it->second.dims.size() != 4 || stem_it->second.dims[0] == 0) {
    throw WeightError(WeightError::Kind::kShape, "stem.weight must be [W,104,3,3]");
  }
  width_ = static_cast<int>(stem_it->second.dims[0]);
  const auto W = static_cast<std::uint32_t>(width_);
  stem_ = {width_, kNumPlanes, 3, require(tensors_, "stem.weight", {W, kNumPlanes, 3, 3}).data.data(),
           require(tensors_, "stem.bias", {W}).data.data()};

  const std::regex tower_re(R"(tower\.(\d+)\.conv[12]\.(weight|bias))");
  const std::regex head_re(
      R"(head\.([A-Za-z0-9_\-]+)\.(policy|pass|value\.conv|value\.fc1|value\.fc2|soon_win\.conv|soon_win\.fc|soon_lose\.conv|soon_lose\.fc|piece_count\.conv|piece_count\.fc)\.(weight|bias))");
  std::vector<std::string> head_names;
  for (const auto& [name, t] : tensors_) {
    std::smatch m;
    if (name == "stem.weight" || name == "stem.bias") continue;
    if (std::regex_match(name, m, tower_re)) {
      blocks_ = std::max(blocks_, std::stoi(m[1]) + 1);
    } else if (std::regex_match(name, m, head_re)) {
      if (std::find(head_names.begin(), head_names.end(), m[1]) == head_names.end()) {
        head_names.push_back(m[1]);
      }
    } else {
      throw WeightError(WeightError::Kind::kUnknownTensor, "unknown tensor " + name);
    }
  }
  for (int b = 0; b < blocks_; ++b) {
    const std::string p = "tower." + std::to_string(b) + ".";
    auto make = [&](const std::string& c) {
      return Conv{width_, width_, 3, require(tensors_, p + c + ".weight", {W, W, 3, 3}).data.data(),
                  require(tensors_, p + c + ".bias", {W}).data.data()};
    };
    tower_.emplace_back(make("conv1"), make("conv2"));
  }
  for (const auto& h : head_names) {
    const std::string p = "head." + h + ".";
    auto w = [&](const std::string& n, std::vector<std::uint32_t> d) {
      return require(tensors_, p + n, std::move(d)).data.data();
    };
    Head head;
    head.policy = {65, width_, 1, w("policy.weight", {65, W}), w("policy.bias", {65})};
    head.pass = {1, 64, w("pass.weight", {64}), w("pass.bias", {1})};
    head.value_conv = {1, width_, 1, w("value.conv.weight", {1, W}), w("value.conv.bias", {1})};
    const auto fc1 = tensors_.find(p + "value.fc1.weight");
    if (fc1 == tensors_.end()) {
      throw WeightError(WeightError::Kind::kMissingTensor, "missing tensor " + p + "value.fc1.weight");
    }
    if (fc1->second.dims.size() != 2 || fc1->second.dims[1] != 64) {
      throw WeightError(WeightError::Kind::kShape, p + "value.fc1.weight must be [H,64]");
    }
    const std::uint32_t hidden = fc1->second.dims[0];
    head.value_fc1 = {static_cast<int>(hidden), 64, w("value.fc1.weight", {hidden, 64}),
                      w("value.fc1.bias", {hidden})};
    head.value_fc2 = {1, static_cast<int>(hidden), w("value.fc2.weight", {1, hidden}),
                      w("value.fc2.bias", {1})};
    auto aux_head = [&](const std::string& k, std::uint32_t outputs) -> std::optional<AuxHead> {
      const bool any = tensors_.count(p + k + ".conv.weight") || tensors_.count(p + k + ".fc.weight");
      if (!any) return std::nullopt;
      return AuxHead{{1, width_, 1, w(k + ".conv.weight", {1, W}), w(k + ".conv.bias", {1})},
                     {static_cast<int>(outputs), 64, w(k + ".fc.weight", {outputs, 64}),
                      w(k + ".fc.bias", {outputs})}};
    };
    head.soon_win = aux_head("soon_win", 1);
    head.soon_lose = aux_head("soon_lose", 1);
    head.piece_count = aux_head("piece_count", 12);
    heads_.emplace(h, head);
  }
  for (const std::string& required : {kTopHeadset, kAllHeadset}) {
    if (!heads_.count(required)) {
      throw WeightError(WeightError::Kind::kMissingTensor, "missing headset " + required);
    }
  }
}

std::unique_ptr<NetworkEvaluator> NetworkEvaluator::load(const std::filesystem::path& path) {
  return std::make_unique<NetworkEvaluator>(read_weights(path));
}

std::vector<HeadsetId> NetworkEvaluator::headsets() const {
  std::vector<HeadsetId> out;
  for (const auto& [name, h] : heads_) out.push_back({name, "weights"});
  return out;
}

const NetworkEvaluator::Head& NetworkEvaluator::head(const std::string& name) const {
  const auto it = heads_.find(name);
  return it == heads_.end() ? heads_.at(kTopHeadset) : it->second;
}

void NetworkEvaluator::tower(const Synopsis& s, std::vector<float>& t) const {
  std::vector<float> input(static_cast<std::size_t>(kNumPlanes) * 64);
  for (int p = 0; p < kNumPlanes; ++p) {
    for (int sq = 0; sq < 64; ++sq) input[p * 64 + sq] = static_cast<float>((s.planes[p] >> sq) & 1);
  }
  t.assign(static_cast<std::size_t>(width_) * 64, 0.0f);
  conv(width_, kNumPlanes, 3, stem_.weight, stem_.bias, input.data(), t.data(), true);
  std::vector<float> h1(t.size()), h2(t.size());
  for (const auto& [c1, c2] : tower_) {
    conv(width_, width_, 3, c1.weight, c1.bias, t.data(), h1.data(), true);
    conv(width_, width_, 3, c2.weight, c2.bias, h1.data(), h2.data(), false);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::max(t[i] + h2[i], 0.0f);
  }
}

std::vector<float> NetworkEvaluator::policy_logits(const std::vector<float>& t,
                                                   const Head& h) const {
  std::vector<float> planes(65 * 64);
  conv(65, width_, 1, h.policy.weight, h.policy.bias, t.data(), planes.data(), false);
  std::vector<float> out(kNumActionIndices, -std::numeric_limits<float>::infinity());
  for (int from = 0; from < 64; ++from) {
    for (int to = 0; to < 64; ++to) out[from * 64 + to] = planes[to * 64 + from];
    out[kSenseIndexBase + from] = planes[64 * 64 + from];
  }
  dense(1, 64, h.pass.weight, h.pass.bias, &planes[64 * 64], &out[kPassIndex]);
  return out;
}

float NetworkEvaluator::value(const std::vector<float>& t, const Head& h) const {
  float board[64];
  conv(1, width_, 1, h.value_conv.weight, h.value_conv.bias, t.data(), board, true);
  std::vector<float> hidden(h.value_fc1.out);
  dense(h.value_fc1.out, 64, h.value_fc1.weight, h.value_fc1.bias, board, hidden.data());
  for (float& v : hidden) v = std::max(v, 0.0f);
  float v;
  dense(1, h.value_fc2.in, h.value_fc2.weight, h.value_fc2.bias, hidden.data(), &v);
  return std::tanh(v);
}

AuxOutput NetworkEvaluator::aux(const std::vector<float>& t, const Head& h) const {
  AuxOutput a;
  auto run = [&](const AuxHead& k, float* out) {
    float board[64];
    conv(1, width_, 1, k.conv.weight, k.conv.bias, t.data(), board, true);
    dense(k.fc.out, 64, k.fc.weight, k.fc.bias, board, out);
  };
  if (h.soon_win) run(*h.soon_win, &a.soon_win), a.soon_win = sigmoid(a.soon_win);
  if (h.soon_lose) run(*h.soon_lose, &a.soon_lose), a.soon_lose = sigmoid(a.soon_lose);
  if (h.piece_count) run(*h.piece_count, a.piece_counts.data());
  return a;
}

std::vector<float> NetworkEvaluator::logits(const Synopsis& s, const HeadsetId& headset) const {
  std::vector<float> t;
  tower(s, t);
  return policy_logits(t, head(headset.name));
}

void NetworkEvaluator::evaluate(std::span<const EvalInput> batch, const HeadsetId& headset,
                                std::span<EvalOutput> out) const {
  if (out.size() < batch.size()) throw std::invalid_argument("output span shorter than batch");
  const Head& policy_head = head(headset.name);
  const Head& value_head = heads_.at(kAllHeadset);
  std::vector<float> t;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Synopsis& s = *batch[i].synopsis;
    tower(s, t);
    const auto all = policy_logits(t, policy_head);
    EvalOutput& o = out[i];
    o.policy.resize(batch[i].actions.size());
    for (std::size_t j = 0; j < batch[i].actions.size(); ++j) {
      Action a = batch[i].actions[j];
      if (s.perspective == Color::kBlack) {
        a.from = a.from.flipped();
        a.to = a.to.flipped();
      }
      o.policy[j] = all[action_index(a)];
    }
    softmax_in_place(o.policy);
    o.value = value(t, value_head);
    if (policy_head.soon_win || policy_head.soon_lose || policy_head.piece_count) {
      o.aux = aux(t, policy_head);
    } else {
      o.aux.reset();
    }
  }
}

std::shared_ptr<const Evaluator> make_evaluator(const std::string& weights_path) {
  std::string path = weights_path;
  if (path.empty()) {
    if (const char* env = std::getenv("PENUMBRAL_WEIGHTS")) path = env;
  }
  if (path.empty()) return std::make_shared<HeuristicEvaluator>();
  return NetworkEvaluator::load(path);
}

}  // namespace penumbral
