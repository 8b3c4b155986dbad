// Copyright 2026 The Authors.
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

#ifndef KSUB_RNG_H_
#define KSUB_RNG_H_

#include <cstdint>
#include <random>
#include <span>

namespace ksub {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to derive independent stream seeds.
uint64_t SplitMix64(uint64_t x);

uint64_t DeriveSeed(uint64_t base, uint64_t stream);

// Uniform double in [0, 1) with 53 random bits. Unlike
// std::uniform_real_distribution this is identical across standard libraries.
double Uniform01(Rng& rng);

// Samples an index from a probability vector by inverse CDF. The last index
// with positive mass absorbs floating-point shortfall in the cumulative sum.
int SampleIndex(std::span<const double> probs, Rng& rng);

}  // namespace ksub

#endif  // KSUB_RNG_H_
