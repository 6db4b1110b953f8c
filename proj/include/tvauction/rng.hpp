// Copyright 2026 The tvauction Authors.
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

#ifndef TVAUCTION_RNG_HPP_
#define TVAUCTION_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace tvauction {

// splitmix64 finalizer.  Used to derive decorrelated stream seeds from a
// user seed plus a stream index.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Seeded random stream.  The generator is std::mt19937_64 (whose output
// sequence is fixed by the standard); the double conversions below are
// spelled out rather than delegated to std::*_distribution so that a seed
// reproduces the same draw sequence on every platform and library.
//
//   uniform01: (raw >> 11) * 2^-53            in [0, 1)
//   normal:    Box-Muller on two raw draws;   u1 in (0, 1] guards the log
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Decorrelated stream `stream` of the master seed.  Streams are used for
  // Monte-Carlo blocks so estimates do not depend on thread count.
  static Rng substream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(seed + 0x9e3779b97f4a7c15ull * stream));
  }

  std::uint64_t raw() { return gen_(); }

  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  double normal() {
    const double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace tvauction

#endif  // TVAUCTION_RNG_HPP_
