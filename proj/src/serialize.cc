// Copyright 2026 The acgl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "acgl/serialize.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "acgl/error.h"

namespace acgl {
namespace {

static_assert(std::endian::native == std::endian::little,
              "container encoding assumes a little-endian host");

constexpr char kMagic[4] = {'A', 'C', 'G', 'L'};

enum class Kind : std::uint32_t { kBackbone = 1, kExpander = 2, kAnalytic = 3 };

class Writer {
 public:
  template <typename T>
  void Put(T value) {
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out_.append(buf, sizeof(T));
  }

  void Header(Kind kind) {
    out_.append(kMagic, 4);
    Put<std::uint32_t>(kContainerVersion);
    Put<std::uint32_t>(static_cast<std::uint32_t>(kind));
  }

  void Matrix(const Eigen::MatrixXd& m) {
    Put<std::uint64_t>(static_cast<std::uint64_t>(m.rows()));
    Put<std::uint64_t>(static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) Put<double>(m(i, j));
    }
  }

  std::string Take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  template <typename T>
  T Get() {
    if (pos_ + sizeof(T) > bytes_.size()) Fail("truncated container");
    T value;
    std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  void Header(Kind kind) {
    if (bytes_.size() < 12 || std::memcmp(bytes_.data(), kMagic, 4) != 0) {
      Fail("not an acgl container");
    }
    pos_ = 4;
    const auto version = Get<std::uint32_t>();
    if (version != kContainerVersion) {
      Fail("unsupported container version " + std::to_string(version));
    }
    const auto got = Get<std::uint32_t>();
    if (got != static_cast<std::uint32_t>(kind)) {
      Fail("container holds kind " + std::to_string(got) + ", expected " +
           std::to_string(static_cast<std::uint32_t>(kind)));
    }
  }

  Eigen::MatrixXd Matrix() {
    const auto rows = Get<std::uint64_t>();
    const auto cols = Get<std::uint64_t>();
    if (cols != 0 && rows > (bytes_.size() - pos_) / 8 / cols) {
      Fail("matrix extends past end of container");
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows),
                      static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Get<double>();
    }
    return m;
  }

  void Finish() {
    if (pos_ != bytes_.size()) Fail("trailing bytes after payload");
  }

 private:
  [[noreturn]] void Fail(const std::string& what) {
    throw ParseError("<container>", 0,
                     what + " at byte " + std::to_string(pos_));
  }

  const std::string& bytes_;
  std::size_t pos_ = 0;
};

void ExpectDim(const char* name, Eigen::Index got, int want) {
  if (want >= 0 && got != want) {
    throw ValidationError(std::string(name) + " is " + std::to_string(got) +
                          ", expected " + std::to_string(want));
  }
}

}  // namespace

std::string EncodeBackbone(const BackboneParams& params) {
  Writer w;
  w.Header(Kind::kBackbone);
  w.Matrix(params.w0);
  w.Matrix(params.w1);
  return w.Take();
}

std::string EncodeExpander(const FeatureExpander& expander) {
  Writer w;
  w.Header(Kind::kExpander);
  w.Put<std::uint64_t>(expander.seed());
  w.Put<std::uint8_t>(expander.uses_adjacency() ? 1 : 0);
  w.Matrix(expander.weights());
  return w.Take();
}

std::string EncodeAnalyticState(const AnalyticState& state) {
  Writer w;
  w.Header(Kind::kAnalytic);
  w.Put<double>(state.gamma());
  w.Put<std::uint64_t>(state.seen_classes().size());
  for (int c : state.seen_classes()) w.Put<std::int64_t>(c);
  w.Matrix(state.weights());
  w.Matrix(state.autocorrelation());
  return w.Take();
}

BackboneParams DecodeBackbone(const std::string& bytes,
                              const BackboneDims& expect) {
  Reader r(bytes);
  r.Header(Kind::kBackbone);
  BackboneParams params;
  params.w0 = r.Matrix();
  params.w1 = r.Matrix();
  r.Finish();
  if (params.w0.cols() != params.w1.rows()) {
    throw ValidationError("backbone w0 cols != w1 rows");
  }
  ExpectDim("backbone input dim", params.w0.rows(), expect.input_dim);
  ExpectDim("backbone hidden dim", params.w0.cols(), expect.hidden_dim);
  ExpectDim("backbone output dim", params.w1.cols(), expect.output_dim);
  return params;
}

FeatureExpander DecodeExpander(const std::string& bytes, int expect_hidden,
                               int expect_expanded) {
  Reader r(bytes);
  r.Header(Kind::kExpander);
  const auto seed = r.Get<std::uint64_t>();
  const auto uses_adjacency = r.Get<std::uint8_t>();
  Eigen::MatrixXd weights = r.Matrix();
  r.Finish();
  ExpectDim("expander hidden dim", weights.rows(), expect_hidden);
  ExpectDim("expander output dim", weights.cols(), expect_expanded);
  return FeatureExpander(std::move(weights), seed, uses_adjacency != 0);
}

AnalyticState DecodeAnalyticState(const std::string& bytes,
                                  int expect_feature_dim) {
  Reader r(bytes);
  r.Header(Kind::kAnalytic);
  const double gamma = r.Get<double>();
  const auto count = r.Get<std::uint64_t>();
  if (count > bytes.size()) throw ParseError("<container>", 0, "bad class count");
  std::vector<int> classes;
  for (std::uint64_t i = 0; i < count; ++i) {
    classes.push_back(static_cast<int>(r.Get<std::int64_t>()));
  }
  Eigen::MatrixXd weights = r.Matrix();
  Eigen::MatrixXd autocorrelation = r.Matrix();
  r.Finish();
  ExpectDim("classifier feature dim", weights.rows(), expect_feature_dim);
  return AnalyticState::FromParts(std::move(weights), std::move(autocorrelation),
                                  gamma, std::move(classes));
}

void WriteBinaryFile(const std::filesystem::path& path,
                     const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failure on " + path.string());
}

std::string ReadBinaryFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace acgl
