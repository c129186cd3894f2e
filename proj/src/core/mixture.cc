// core/mixture.cc

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

#include "core/mixture.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "core/error.h"

namespace diarkit {

namespace {

constexpr double kPriorSumTol = 1e-9;

double ParsePriorValue(const std::string &text, const std::string &whole) {
  try {
    size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception &) {
    throw Error(ErrorCode::kParse, "bad prior value '" + text + "' in '" +
                                       whole + "'");
  }
}

}  // namespace

void ValidatePrior(const SpeakerTypePrior &prior) {
  double sum = 0.0;
  for (double v : prior.p) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "prior entries must lie in [0, 1]");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kPriorSumTol) {
    throw Error(ErrorCode::kInvalidArgument, "prior must sum to 1");
  }
}

SpeakerTypePrior UniformPrior() {
  SpeakerTypePrior prior;
  prior.p.fill(1.0 / 3.0);
  return prior;
}

SpeakerTypePrior NonuniformPrior() { return ExplicitPrior(0.2, 0.4, 0.4); }

SpeakerTypePrior OraclePrior(SpeakerType t) {
  SpeakerTypePrior prior;
  prior.p[static_cast<int>(t)] = 1.0;
  return prior;
}

SpeakerTypePrior ExplicitPrior(double m, double f, double c) {
  SpeakerTypePrior prior;
  prior.p = {m, f, c};
  ValidatePrior(prior);
  return prior;
}

SpeakerTypePrior ParsePrior(const std::string &text) {
  if (text == "uniform") return UniformPrior();
  if (text == "paper") return NonuniformPrior();
  if (text.rfind("oracle:", 0) == 0) {
    std::string tail = text.substr(7);
    if (tail.size() != 1) {
      throw Error(ErrorCode::kParse, "bad oracle prior '" + text + "'");
    }
    return OraclePrior(ParseSpeakerType(tail));
  }
  // Explicit form: comma-separated <M|F|C>=<value>, each type at most once.
  SpeakerTypePrior prior;
  std::array<bool, kNumSpeakerTypes> seen{false, false, false};
  std::stringstream ss(text);
  std::string item;
  bool any = false;
  while (std::getline(ss, item, ',')) {
    any = true;
    size_t eq = item.find('=');
    if (eq == std::string::npos || eq != 1) {
      throw Error(ErrorCode::kParse, "bad prior entry '" + item + "' in '" +
                                         text + "'");
    }
    SpeakerType t = ParseSpeakerType(item.substr(0, 1));
    if (seen[static_cast<int>(t)]) {
      throw Error(ErrorCode::kParse,
                  "duplicate prior entry for type '" + item.substr(0, 1) +
                      "'");
    }
    seen[static_cast<int>(t)] = true;
    prior.p[static_cast<int>(t)] = ParsePriorValue(item.substr(eq + 1), text);
  }
  if (!any) throw Error(ErrorCode::kParse, "empty prior spec");
  ValidatePrior(prior);
  return prior;
}

MixturePlda::MixturePlda(PldaModel male, PldaModel female, PldaModel child,
                         SpeakerTypePrior default_prior)
    : components_{std::move(male), std::move(female), std::move(child)},
      default_prior_(default_prior) {
  ValidatePrior(default_prior_);
  if (components_[0].dim() <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty mixture component");
  }
  for (int g = 1; g < kNumSpeakerTypes; ++g) {
    if (components_[g].dim() != components_[0].dim()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "mixture components must share one dimension");
    }
  }
}

double WeightedLogSumExp(const std::array<double, kNumSpeakerTypes> &w,
                         const std::array<double, kNumSpeakerTypes> &t) {
  double max_term = -std::numeric_limits<double>::infinity();
  for (int g = 0; g < kNumSpeakerTypes; ++g) {
    if (w[g] > 0.0 && t[g] > max_term) max_term = t[g];
  }
  if (!std::isfinite(max_term)) {
    return -std::numeric_limits<double>::infinity();
  }
  double sum = 0.0;
  for (int g = 0; g < kNumSpeakerTypes; ++g) {
    if (w[g] > 0.0) sum += w[g] * std::exp(t[g] - max_term);
  }
  return max_term + std::log(sum);
}

std::array<double, kNumSpeakerTypes> NumeratorWeights(
    const SpeakerTypePrior &prior1, const SpeakerTypePrior &prior2) {
  std::array<double, kNumSpeakerTypes> w{};
  double total = 0.0;
  for (int g = 0; g < kNumSpeakerTypes; ++g) {
    w[g] = prior1.p[g] * prior2.p[g];
    total += w[g];
  }
  if (total > 0.0) {
    for (double &v : w) v /= total;
  }
  return w;
}

namespace {

double LogNumeratorWeighted(const MixturePlda &mix,
                            const std::array<double, kNumSpeakerTypes> &w,
                            const Embedding &z1, const Embedding &z2,
                            bool length_normalize) {
  std::array<double, kNumSpeakerTypes> terms;
  terms.fill(-std::numeric_limits<double>::infinity());
  for (int g = 0; g < kNumSpeakerTypes; ++g) {
    if (w[g] <= 0.0) continue;
    const PldaModel &m = mix.component(static_cast<SpeakerType>(g));
    Eigen::VectorXd u1 = m.TransformRaw(z1, length_normalize);
    Eigen::VectorXd u2 = m.TransformRaw(z2, length_normalize);
    terms[g] = m.LogJointSame(u1, u2);
  }
  return WeightedLogSumExp(w, terms);
}

double LogDenominatorSide(const MixturePlda &mix,
                          const SpeakerTypePrior &prior, const Embedding &z,
                          bool length_normalize) {
  std::array<double, kNumSpeakerTypes> terms;
  terms.fill(-std::numeric_limits<double>::infinity());
  for (int g = 0; g < kNumSpeakerTypes; ++g) {
    if (prior.p[g] <= 0.0) continue;
    const PldaModel &m = mix.component(static_cast<SpeakerType>(g));
    terms[g] = m.LogMarginal(m.TransformRaw(z, length_normalize));
  }
  return WeightedLogSumExp(prior.p, terms);
}

}  // namespace

double LogNumeratorMixture(const MixturePlda &mix,
                           const SpeakerTypePrior &prior1,
                           const SpeakerTypePrior &prior2, const Embedding &z1,
                           const Embedding &z2, bool length_normalize) {
  return LogNumeratorWeighted(mix, NumeratorWeights(prior1, prior2), z1, z2,
                              length_normalize);
}

double LogDenominatorMixture(const MixturePlda &mix,
                             const SpeakerTypePrior &prior1,
                             const SpeakerTypePrior &prior2,
                             const Embedding &z1, const Embedding &z2,
                             bool length_normalize) {
  return LogDenominatorSide(mix, prior1, z1, length_normalize) +
         LogDenominatorSide(mix, prior2, z2, length_normalize);
}

double LogLrMixture(const MixturePlda &mix, const SpeakerTypePrior &prior1,
                    const SpeakerTypePrior &prior2, const Embedding &z1,
                    const Embedding &z2, bool length_normalize) {
  double num = LogNumeratorMixture(mix, prior1, prior2, z1, z2,
                                   length_normalize);
  double den = LogDenominatorMixture(mix, prior1, prior2, z1, z2,
                                     length_normalize);
  return num - den;
}

double LogLrMixtureShared(const MixturePlda &mix,
                          const SpeakerTypePrior &prior, const Embedding &z1,
                          const Embedding &z2, bool length_normalize) {
  double num =
      LogNumeratorWeighted(mix, prior.p, z1, z2, length_normalize);
  double den = LogDenominatorSide(mix, prior, z1, length_normalize) +
               LogDenominatorSide(mix, prior, z2, length_normalize);
  return num - den;
}

void SaveMixture(const MixturePlda &mix, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out.write("MPLD", 4);
  std::uint32_t version = 1;
  out.write(reinterpret_cast<const char *>(&version), sizeof(version));
  out.write(reinterpret_cast<const char *>(mix.default_prior().p.data()),
            kNumSpeakerTypes * sizeof(double));
  for (SpeakerType t : kAllSpeakerTypes) {
    char tag = SpeakerTypeChar(t);
    out.write(&tag, 1);
    SavePldaStream(mix.component(t), out);
  }
  if (!out) throw Error(ErrorCode::kIo, "short write to '" + path + "'");
}

MixturePlda LoadMixture(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open '" + path + "'");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "MPLD", 4) != 0) {
    throw Error(ErrorCode::kParse, "'" + path + "' is not a mixture model");
  }
  std::uint32_t version = 0;
  in.read(reinterpret_cast<char *>(&version), sizeof(version));
  if (!in || version != 1) {
    throw Error(ErrorCode::kParse, "unsupported mixture model version");
  }
  SpeakerTypePrior prior;
  in.read(reinterpret_cast<char *>(prior.p.data()),
          kNumSpeakerTypes * sizeof(double));
  if (!in) throw Error(ErrorCode::kParse, "truncated mixture model");
  std::array<PldaModel, kNumSpeakerTypes> parts;
  for (SpeakerType t : kAllSpeakerTypes) {
    char tag = 0;
    in.read(&tag, 1);
    if (!in || tag != SpeakerTypeChar(t)) {
      throw Error(ErrorCode::kParse, "mixture component order corrupt");
    }
    parts[static_cast<int>(t)] = LoadPldaStream(in, path);
  }
  return MixturePlda(std::move(parts[0]), std::move(parts[1]),
                     std::move(parts[2]), prior);
}

}  // namespace diarkit
