// core/plda.cc

// Copyright 2026 diarkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/plda.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>

#include "core/embedding.h"

namespace diarkit {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;
constexpr char kModelMagic[4] = {'P', 'L', 'D', 'A'};
constexpr uint32_t kModelVersion = 1;

// Eigenvalue floor applied to covariance estimates before they are inverted.
// Healthy estimates pass through untouched so EM stays exact.
Eigen::MatrixXd FloorSpd(const Eigen::MatrixXd &m, double eps) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (eig.info() != Eigen::Success)
    throw Error(ErrorCode::kNumeric, "covariance eigendecomposition failed");
  if (eig.eigenvalues().minCoeff() >= eps) return m;
  Eigen::VectorXd s = eig.eigenvalues().cwiseMax(eps);
  return eig.eigenvectors() * s.asDiagonal() * eig.eigenvectors().transpose();
}

struct SpdInverse {
  Eigen::MatrixXd inverse;
  double logdet;
};

SpdInverse InvertSpd(const Eigen::MatrixXd &m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::kNumeric, "rank-deficient data");
  SpdInverse out;
  out.inverse = llt.solve(
      Eigen::MatrixXd::Identity(m.rows(), m.cols()));
  out.logdet =
      2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  return out;
}

struct ClassStats {
  Eigen::VectorXd mean;  // raw class mean
  int count = 0;
};

struct TrainStats {
  int dim = 0;
  int num_examples = 0;
  std::vector<ClassStats> classes;
  Eigen::MatrixXd offset_scatter;  // sum over classes of (z - m_k)(z - m_k)^T
  Eigen::VectorXd global_mean;     // unweighted average of class means
  double floor_eps = 0.0;
};

TrainStats AccumulateStats(const LabeledEmbeddingSet &data) {
  if (data.embeddings.size() != data.speaker_ids.size())
    throw Error(ErrorCode::kInvalidArgument,
                "embeddings and speaker ids differ in length");
  if (data.embeddings.empty())
    throw Error(ErrorCode::kInvalidArgument, "no training embeddings");

  TrainStats stats;
  stats.dim = static_cast<int>(data.embeddings[0].size());
  stats.num_examples = static_cast<int>(data.embeddings.size());

  std::map<std::string, std::vector<int>> by_speaker;
  for (size_t i = 0; i < data.embeddings.size(); ++i) {
    const Embedding &z = data.embeddings[i];
    if (z.size() != stats.dim)
      throw Error(ErrorCode::kInvalidArgument,
                  "inconsistent embedding dimension in training data");
    if (!z.allFinite())
      throw Error(ErrorCode::kNumeric, "non-finite training embedding");
    by_speaker[data.speaker_ids[i]].push_back(static_cast<int>(i));
  }
  if (by_speaker.size() < 2)
    throw Error(ErrorCode::kInvalidArgument,
                "PLDA training requires at least 2 speakers");

  int d = stats.dim;
  stats.offset_scatter = Eigen::MatrixXd::Zero(d, d);
  stats.global_mean = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd example_sum = Eigen::VectorXd::Zero(d);
  double sq_sum = 0.0;
  int max_count = 0;
  for (const auto &[speaker, idx] : by_speaker) {
    ClassStats cls;
    cls.count = static_cast<int>(idx.size());
    max_count = std::max(max_count, cls.count);
    cls.mean = Eigen::VectorXd::Zero(d);
    for (int i : idx) cls.mean += data.embeddings[i];
    cls.mean /= cls.count;
    for (int i : idx) {
      Eigen::VectorXd off = data.embeddings[i] - cls.mean;
      stats.offset_scatter.noalias() += off * off.transpose();
      example_sum += data.embeddings[i];
      sq_sum += data.embeddings[i].squaredNorm();
    }
    stats.global_mean += cls.mean;
    stats.classes.push_back(std::move(cls));
  }
  if (max_count < 2)
    throw Error(ErrorCode::kInvalidArgument,
                "PLDA training requires a speaker with >= 2 embeddings");
  stats.global_mean /= static_cast<double>(stats.classes.size());

  // Floor scale from the total data variance, so degenerate within-class
  // scatter still trains (and the one-point-per-dimension variance of the
  // floor shows up as the within-class variance).
  double n = stats.num_examples;
  double total_var_trace =
      sq_sum / n - (example_sum / n).squaredNorm();
  if (!(total_var_trace > 0.0))
    throw Error(ErrorCode::kNumeric, "rank-deficient data");
  stats.floor_eps = 1e-6 * total_var_trace / d;
  return stats;
}

// Marginal log-likelihood of the training data at (within, between), per
// example.  Within-class offsets of a class with n examples live in an
// (n-1)-dimensional subspace with covariance `within`; the class mean is
// N(global_mean, between + within / n).
double Objective(const TrainStats &stats, const Eigen::MatrixXd &within,
                 const Eigen::MatrixXd &between) {
  int d = stats.dim;
  int num_classes = static_cast<int>(stats.classes.size());
  double within_count = stats.num_examples - num_classes;

  SpdInverse w = InvertSpd(within);
  double part1 = -0.5 * (within_count * (w.logdet + kLog2Pi * d) +
                         (w.inverse.array() * stats.offset_scatter.array())
                             .sum());

  std::map<int, std::vector<int>> by_count;
  for (int k = 0; k < num_classes; ++k)
    by_count[stats.classes[k].count].push_back(k);

  double part2 = 0.0;
  for (const auto &[n, members] : by_count) {
    SpdInverse c = InvertSpd(between + within / static_cast<double>(n));
    for (int k : members) {
      Eigen::VectorXd m = stats.classes[k].mean - stats.global_mean;
      part2 += -0.5 * (c.logdet + kLog2Pi * d +
                       m.dot(c.inverse * m));
    }
  }
  return (part1 + part2) / stats.num_examples;
}

// One EM iteration.  For a class with n examples and centered mean m,
//   m = x + y,  x ~ N(0, between),  y ~ N(0, within / n),
// so the posterior of x is Gaussian with covariance
//   mixed = (between^-1 + n within^-1)^-1
// and mean w = mixed * n * within^-1 * m.  x feeds the between stats and
// (m - w) the within stats.
void EmIterate(const TrainStats &stats, Eigen::MatrixXd *within,
               Eigen::MatrixXd *between) {
  int d = stats.dim;
  int num_classes = static_cast<int>(stats.classes.size());

  Eigen::MatrixXd w_inv = InvertSpd(*within).inverse;
  Eigen::MatrixXd b_inv = InvertSpd(*between).inverse;

  Eigen::MatrixXd within_stats = stats.offset_scatter;
  double within_count = stats.num_examples - num_classes;
  Eigen::MatrixXd between_stats = Eigen::MatrixXd::Zero(d, d);
  double between_count = 0.0;

  std::map<int, std::vector<int>> by_count;
  for (int k = 0; k < num_classes; ++k)
    by_count[stats.classes[k].count].push_back(k);

  for (const auto &[n, members] : by_count) {
    Eigen::MatrixXd mixed = InvertSpd(b_inv + n * w_inv).inverse;
    for (int k : members) {
      Eigen::VectorXd m = stats.classes[k].mean - stats.global_mean;
      Eigen::VectorXd w = mixed * (n * (w_inv * m));
      Eigen::VectorXd res = m - w;
      between_stats.noalias() += mixed + w * w.transpose();
      between_count += 1.0;
      within_stats.noalias() += n * (mixed + res * res.transpose());
      within_count += 1.0;
    }
  }

  *within = FloorSpd(within_stats / within_count, stats.floor_eps);
  *between = FloorSpd(between_stats / between_count, stats.floor_eps);
}

}  // namespace

PldaModel::PldaModel(Eigen::VectorXd mean, Eigen::MatrixXd transform,
                     Eigen::VectorXd psi)
    : mean_(std::move(mean)),
      transform_(std::move(transform)),
      psi_(std::move(psi)) {
  FinalizeDerived();
}

void PldaModel::FinalizeDerived() {
  int d = dim();
  if (d <= 0 || transform_.rows() != d || transform_.cols() != d ||
      psi_.size() != d)
    throw Error(ErrorCode::kInvalidArgument, "inconsistent PLDA model shape");
  if (!mean_.allFinite() || !transform_.allFinite() || !psi_.allFinite())
    throw Error(ErrorCode::kNumeric, "non-finite PLDA model parameter");
  if (psi_.minCoeff() < 0.0)
    throw Error(ErrorCode::kNumeric, "negative between-class variance");

  Eigen::FullPivLU<Eigen::MatrixXd> lu(transform_);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible())
    throw Error(ErrorCode::kNumeric, "numerically singular PLDA transform");

  Eigen::ArrayXd psi = psi_.array();
  inv_marg_var_ = 1.0 / (psi + 1.0);
  joint_diag_ = (psi + 1.0) / (2.0 * psi + 1.0);
  joint_cross_ = psi / (2.0 * psi + 1.0);
  marg_const_ = -0.5 * (d * kLog2Pi + (psi + 1.0).log().sum());
  joint_const_ = -0.5 * (2.0 * d * kLog2Pi + (2.0 * psi + 1.0).log().sum());
}

Embedding PldaModel::TransformRaw(const Embedding &z,
                                  bool length_normalize) const {
  if (z.size() != dim())
    throw Error(ErrorCode::kInvalidArgument, "embedding dimension mismatch");
  if (length_normalize)
    return transform_ * (LengthNormalize(z) - mean_);
  return transform_ * (z - mean_);
}

double PldaModel::LogMarginal(const Eigen::VectorXd &u) const {
  if (u.size() != dim())
    throw Error(ErrorCode::kInvalidArgument, "embedding dimension mismatch");
  return marg_const_ -
         0.5 * (u.array().square() * inv_marg_var_).sum();
}

double PldaModel::LogJointSame(const Eigen::VectorXd &u1,
                               const Eigen::VectorXd &u2) const {
  if (u1.size() != dim() || u2.size() != dim())
    throw Error(ErrorCode::kInvalidArgument, "embedding dimension mismatch");
  Eigen::ArrayXd a1 = u1.array();
  Eigen::ArrayXd a2 = u2.array();
  double quad = ((a1.square() + a2.square()) * joint_diag_ -
                 2.0 * (a1 * a2) * joint_cross_)
                    .sum();
  return joint_const_ - 0.5 * quad;
}

double LogLrSingle(const PldaModel &model, const Embedding &z1,
                   const Embedding &z2, bool length_normalize) {
  Embedding u1 = model.TransformRaw(z1, length_normalize);
  Embedding u2 = model.TransformRaw(z2, length_normalize);
  return model.LogJointSame(u1, u2) -
         (model.LogMarginal(u1) + model.LogMarginal(u2));
}

PldaTrainResult TrainPlda(const LabeledEmbeddingSet &data, int iterations) {
  if (iterations < 1)
    throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 1");
  TrainStats stats = AccumulateStats(data);
  int d = stats.dim;
  int num_classes = static_cast<int>(stats.classes.size());

  // Scatter-based initialization.
  Eigen::MatrixXd within =
      stats.offset_scatter / std::max(stats.num_examples - num_classes, 1);
  Eigen::MatrixXd between = Eigen::MatrixXd::Zero(d, d);
  for (const auto &cls : stats.classes) {
    Eigen::VectorXd m = cls.mean - stats.global_mean;
    between.noalias() += m * m.transpose();
  }
  between /= num_classes;
  within = FloorSpd(within, stats.floor_eps);
  between = FloorSpd(between, stats.floor_eps);

  PldaTrainResult result;
  result.loglik.push_back(Objective(stats, within, between));
  for (int it = 0; it < iterations; ++it) {
    EmIterate(stats, &within, &between);
    result.loglik.push_back(Objective(stats, within, between));
  }

  // Simultaneous diagonalization: whiten the within-class covariance, then
  // rotate to diagonalize the projected between-class covariance.
  Eigen::LLT<Eigen::MatrixXd> llt(within);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::kNumeric, "rank-deficient data");
  Eigen::MatrixXd whiten =
      llt.matrixL().solve(Eigen::MatrixXd::Identity(d, d));
  Eigen::MatrixXd between_proj = whiten * between * whiten.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(between_proj);
  if (eig.info() != Eigen::Success)
    throw Error(ErrorCode::kNumeric, "between-class diagonalization failed");

  // Eigen returns ascending order; the model stores psi descending.
  Eigen::VectorXd psi = eig.eigenvalues().reverse().cwiseMax(0.0);
  Eigen::MatrixXd rotation = eig.eigenvectors().rowwise().reverse();
  result.model =
      PldaModel(stats.global_mean, rotation.transpose() * whiten, psi);
  return result;
}

void SavePldaStream(const PldaModel &model, std::ostream &os) {
  os.write(kModelMagic, 4);
  uint32_t version = kModelVersion;
  uint32_t d = static_cast<uint32_t>(model.dim());
  os.write(reinterpret_cast<const char *>(&version), sizeof(version));
  os.write(reinterpret_cast<const char *>(&d), sizeof(d));
  os.write(reinterpret_cast<const char *>(model.mean().data()),
           static_cast<std::streamsize>(d * sizeof(double)));
  // Row-major on disk.
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = 0; j < d; ++j) {
      double v = model.transform()(i, j);
      os.write(reinterpret_cast<const char *>(&v), sizeof(v));
    }
  os.write(reinterpret_cast<const char *>(model.psi().data()),
           static_cast<std::streamsize>(d * sizeof(double)));
}

PldaModel LoadPldaStream(std::istream &is, const std::string &origin) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kModelMagic, 4) != 0)
    throw Error(ErrorCode::kParse, origin + ": not a PLDA model file");
  uint32_t version = 0, d = 0;
  is.read(reinterpret_cast<char *>(&version), sizeof(version));
  is.read(reinterpret_cast<char *>(&d), sizeof(d));
  if (!is) throw Error(ErrorCode::kParse, origin + ": truncated model file");
  if (version != kModelVersion)
    throw Error(ErrorCode::kParse, origin + ": unsupported model version " +
                                       std::to_string(version));
  if (d == 0 || d > (1u << 20))
    throw Error(ErrorCode::kParse,
                origin + ": implausible dimension " + std::to_string(d));

  Eigen::VectorXd mean(d), psi(d);
  Eigen::MatrixXd transform(d, d);
  is.read(reinterpret_cast<char *>(mean.data()),
          static_cast<std::streamsize>(d * sizeof(double)));
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = 0; j < d; ++j) {
      double v;
      is.read(reinterpret_cast<char *>(&v), sizeof(v));
      transform(i, j) = v;
    }
  is.read(reinterpret_cast<char *>(psi.data()),
          static_cast<std::streamsize>(d * sizeof(double)));
  if (!is) throw Error(ErrorCode::kParse, origin + ": truncated model file");
  return PldaModel(std::move(mean), std::move(transform), std::move(psi));
}

void SavePlda(const PldaModel &model, const std::string &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw Error(ErrorCode::kIo, "cannot write model file '" + path + "'");
  SavePldaStream(model, os);
  if (!os)
    throw Error(ErrorCode::kIo, "write failed for model file '" + path + "'");
}

PldaModel LoadPlda(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw Error(ErrorCode::kNotFound, "cannot open model file '" + path + "'");
  return LoadPldaStream(is, path);
}

}  // namespace diarkit
