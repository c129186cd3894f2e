// core/rng.h

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

#ifndef DIARKIT_CORE_RNG_H_
#define DIARKIT_CORE_RNG_H_

#include <cmath>
#include <cstdint>

namespace diarkit {

// Counter-based generator used for every piece of synthetic randomness in
// the toolkit.  The full stream is a pure function of (seed, stream, i), so
// any consumer language can reproduce it:
//
//   mix64(z):  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//              z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//              return z ^ (z >> 31)
//   key(seed, stream) = mix64(seed ^ (0x9E3779B97F4A7C15 * (stream + 1)))
//   word(seed, stream, i) = mix64(key + 0x9E3779B97F4A7C15 * (i + 1))
//
// uniform() maps a word to [0,1) via (word >> 11) * 2^-53.  normal() is
// Box-Muller and consumes exactly two words per draw.  uniform_int(n) is
// word % n (n is always tiny relative to 2^64 here).
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed, uint64_t stream = 0)
      : key_(Mix64(seed ^ (kGamma * (stream + 1)))), counter_(0) {}

  uint64_t NextWord() { return Mix64(key_ + kGamma * (++counter_)); }

  double Uniform() {
    return static_cast<double>(NextWord() >> 11) * 0x1.0p-53;
  }

  double Normal() {
    double u1 = Uniform();
    double u2 = Uniform();
    double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    return r * std::cos(2.0 * M_PI * u2);
  }

  uint64_t UniformInt(uint64_t n) { return NextWord() % n; }

  static uint64_t Mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  uint64_t key_;
  uint64_t counter_;
};

// Decorrelated child seed for a subtask: mix64(seed ^ (gamma * (salt + 1))),
// the same derivation as a stream key.
inline uint64_t DeriveSeed(uint64_t seed, uint64_t salt) {
  return CounterRng::Mix64(seed ^ (0x9E3779B97F4A7C15ULL * (salt + 1)));
}

}  // namespace diarkit

#endif  // DIARKIT_CORE_RNG_H_
