// Copyright 2026 The gscount Authors
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

// Head scalars (a_i, b_i) and the sparse basis vectors
//
//   v_i = [a_i, b_i, e_i^T]^T,   i = 1 .. 2N-2,
//
// where e_i is the i-th unit vector of length 2N-2. Inputs are generated in
// Alamouti-consistent pairs: a_{2n} = -conj(b_{2n-1}), b_{2n} = conj(a_{2n-1}).

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gscount/errors.hpp"
#include "gscount/ortho_vector.hpp"

namespace gscount {

struct ChannelPair {
  cplx a;
  cplx b;
  friend bool operator==(const ChannelPair&, const ChannelPair&) = default;
};

enum class Pairing { alamouti, unpaired };

struct ChannelPairs {
  int n_rx = 0;
  std::uint64_t seed = 0;
  /// 2N-2 pairs; pairs[k] holds (a_{k+1}, b_{k+1}).
  std::vector<ChannelPair> pairs;

  /// Largest deviation from the Alamouti pairing rule over all pairs.
  [[nodiscard]] double pairing_residual() const {
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < pairs.size(); k += 2) {
      const auto& odd = pairs[k];
      const auto& even = pairs[k + 1];
      worst = std::max(worst, std::abs(even.a + std::conj(odd.b)));
      worst = std::max(worst, std::abs(even.b - std::conj(odd.a)));
    }
    return worst;
  }

  friend bool operator==(const ChannelPairs&, const ChannelPairs&) = default;
};

inline void require_n_rx(int n_rx) {
  if (n_rx < 2) {
    throw DomainError("number of receive antennas must be >= 2, got " +
                      std::to_string(n_rx));
  }
}

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of trial `t` (0-based) derived from a base seed.
constexpr std::uint64_t trial_seed(std::uint64_t base, std::uint64_t t) noexcept {
  return splitmix64(base + (t + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Standard circular complex Gaussian samples (E|z|^2 = 1).
///
/// Pinned for reproducibility across toolchains: mt19937_64, 53-bit
/// uniforms u = (x >> 11) * 2^-53, and z = sqrt(-ln(1 - u1)) * exp(i 2 pi u2).
class ComplexGaussianSource {
 public:
  explicit ComplexGaussianSource(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  cplx next() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log1p(-u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::mt19937_64 engine_;
};

/// Completes a channel from its odd-indexed pairs (a_{2n-1}, b_{2n-1}) by the
/// pairing rule.
inline ChannelPairs make_paired_channel(int n_rx,
                                        std::span<const ChannelPair> odd,
                                        std::uint64_t seed = 0) {
  require_n_rx(n_rx);
  if (odd.size() != static_cast<std::size_t>(n_rx - 1)) {
    throw DomainError("expected N-1 odd pairs");
  }
  ChannelPairs ch{n_rx, seed, {}};
  ch.pairs.reserve(2 * odd.size());
  for (const auto& p : odd) {
    ch.pairs.push_back(p);
    ch.pairs.push_back({-std::conj(p.b), std::conj(p.a)});
  }
  return ch;
}

/// Seeded channel draw. Generation is input preparation and charges nothing.
/// `Pairing::unpaired` draws every pair independently (negative tests only).
inline ChannelPairs gen_channel(int n_rx, std::uint64_t seed,
                                Pairing pairing = Pairing::alamouti) {
  require_n_rx(n_rx);
  ComplexGaussianSource src(seed);
  const auto count = static_cast<std::size_t>(2 * n_rx - 2);
  if (pairing == Pairing::unpaired) {
    ChannelPairs ch{n_rx, seed, {}};
    for (std::size_t k = 0; k < count; ++k) {
      const cplx a = src.next();
      ch.pairs.push_back({a, src.next()});
    }
    return ch;
  }
  std::vector<ChannelPair> odd;
  odd.reserve(count / 2);
  for (std::size_t k = 0; k < count / 2; ++k) {
    const cplx a = src.next();
    odd.push_back({a, src.next()});
  }
  return make_paired_channel(n_rx, odd, seed);
}

/// v_1 .. v_{2N-2}, each of length 2N with support {1, 2, i+2} (1-based).
inline std::vector<OrthoVector> build_basis(const ChannelPairs& ch) {
  require_n_rx(ch.n_rx);
  const auto count = static_cast<std::size_t>(2 * ch.n_rx - 2);
  if (ch.pairs.size() != count) {
    throw DomainError("channel must hold 2N-2 pairs, got " +
                      std::to_string(ch.pairs.size()));
  }
  const std::size_t len = count + 2;
  std::vector<OrthoVector> basis;
  basis.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    OrthoVector v(len);
    v.set(0, ch.pairs[k].a);
    v.set(1, ch.pairs[k].b);
    v.set(k + 2, 1.0);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace gscount
