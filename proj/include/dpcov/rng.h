//
// Copyright 2026 The DPCov Authors
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
//

#ifndef DPCOV_RNG_H_
#define DPCOV_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dpcov {

// Mixes a master seed with a sequence of stream indices into a child seed.
// Each index is folded in through the SplitMix64 finalizer, so
// DeriveSeed(s, {a, b}) and DeriveSeed(s, {b, a}) are unrelated streams.
uint64_t DeriveSeed(uint64_t master_seed,
                    std::initializer_list<uint64_t> indices);

// Seeded random source. Owned by exactly one worker at a time; children are
// obtained with Fork() so that results never depend on scheduling order.
class Rng {
 public:
  using Engine = std::mt19937_64;

  explicit Rng(uint64_t seed) : seed_(seed), engine_(seed) {}

  uint64_t seed() const { return seed_; }

  // Independent stream keyed by (this seed, stream). Does not advance *this.
  Rng Fork(uint64_t stream) const { return Rng(DeriveSeed(seed_, {stream})); }

  Engine& engine() { return engine_; }

  // Standard normal draw.
  double Gaussian() { return normal_(engine_); }

  // Draws a fresh 64-bit value from the engine.
  uint64_t NextU64() { return engine_(); }

 private:
  uint64_t seed_;
  Engine engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace dpcov

#endif  // DPCOV_RNG_H_
