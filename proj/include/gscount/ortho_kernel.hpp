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

// Gram-Schmidt orthonormalization of the structured basis v_1 .. v_{2N-2}.
//
// Two kernels:
//
//  * gs_reference: dense classical Gram-Schmidt computed literally. theta_1
//    and theta_2 are v_1 and v_2 normalized; for n = 2 .. N-1 both
//
//        theta_{2n-1} = (v_{2n-1} - sum_{j<=2n-2} c_{2n-1}^j theta_j) / ||.||
//        theta_{2n}   = (v_{2n}   - sum_{j<=2n-2} c_{2n}^j   theta_j) / ||.||
//
//    with c_i^j = theta_j^H v_i over full-length vectors. Uncounted; serves as
//    the numerical oracle.
//
//  * gs_optimized: the counted kernel. Only the odd vectors are computed;
//    theta_{2n} = alamouti_partner(theta_{2n-1}) at no cost. All arithmetic
//    touches declared supports only, which follow
//
//        theta_{2n-1} ~ {1 .. 2n+1},   theta_{2n} ~ {1 .. 2n, 2n+2}.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gscount/accounting.hpp"
#include "gscount/errors.hpp"
#include "gscount/ortho_vector.hpp"

namespace gscount {

inline constexpr double kEquivalenceTol = 1e-10;
inline constexpr double kExactZeroTol = 1e-12;
inline constexpr double kDegenerateDivisor = 1e-12;
inline constexpr double kPairingTol = 1e-8;

struct OrthoBasis {
  int n_rx = 0;
  /// theta_1 .. theta_{2N-2}.
  std::vector<OrthoVector> thetas;
};

/// Projection coefficients per GS step n = 2 .. N-1; entry [n-2][j-1].
struct ProjectionCoefficients {
  std::vector<std::vector<cplx>> odd;   // c_{2n-1}^j
  std::vector<std::vector<cplx>> even;  // c_{2n}^j, reference kernel only
};

enum class Phase : std::size_t {
  theta12,
  coefficients,
  projection_sum,
  subtract,
  normalize,
};

inline constexpr std::array<Phase, 5> kAllPhases = {
    Phase::theta12, Phase::coefficients, Phase::projection_sum,
    Phase::subtract, Phase::normalize};

constexpr std::string_view phase_name(Phase p) noexcept {
  switch (p) {
    case Phase::theta12: return "theta12";
    case Phase::coefficients: return "coefficients";
    case Phase::projection_sum: return "projection_sum";
    case Phase::subtract: return "subtract";
    case Phase::normalize: return "normalize";
  }
  return "?";
}

struct PhaseCosts {
  std::array<OpCounts, kAllPhases.size()> by_phase{};

  OpCounts& operator[](Phase p) { return by_phase[static_cast<std::size_t>(p)]; }
  const OpCounts& operator[](Phase p) const {
    return by_phase[static_cast<std::size_t>(p)];
  }
  [[nodiscard]] OpCounts total() const {
    OpCounts t;
    for (const auto& c : by_phase) t = t + c;
    return t;
  }
  friend bool operator==(const PhaseCosts&, const PhaseCosts&) = default;
};

struct GsRun {
  OrthoBasis basis;
  ProjectionCoefficients coefficients;
  /// Normalization divisors in the order they were taken.
  std::vector<double> divisors;
  /// Populated by gs_optimized only.
  PhaseCosts phases;
};

struct GsOptions {
  /// Reject inputs whose even vectors are not Alamouti partners of the odd
  /// ones. Uncounted.
  bool check_pairing = true;
};

namespace detail {

inline int n_rx_of(std::span<const OrthoVector> basis) {
  if (basis.empty()) throw DomainError("empty basis");
  const std::size_t len = basis.front().size();
  if (len < 4 || len % 2 != 0 || basis.size() != len - 2) {
    throw DomainError("expected 2N-2 basis vectors of length 2N, got " +
                      std::to_string(basis.size()) + " of length " +
                      std::to_string(len));
  }
  for (const auto& v : basis) {
    if (v.size() != len) throw DomainError("basis vectors differ in length");
  }
  return static_cast<int>(len / 2);
}

inline void check_divisor(double d, std::size_t which) {
  if (!(d >= kDegenerateDivisor)) {
    throw DegeneracyError("normalization divisor " + std::to_string(d) +
                          " below guard for theta_" + std::to_string(which));
  }
}

// v_i must be zero except at positions 1, 2 and a unit entry at i+2.
inline void check_shape(std::span<const OrthoVector> basis,
                        const GsOptions& opts) {
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& v = basis[k];
    for (std::size_t idx : v.support()) {
      if (idx > 1 && idx != k + 2 && v[idx] != cplx{}) {
        throw StructureError("v_" + std::to_string(k + 1) +
                             " has an entry outside {1, 2, i+2}");
      }
    }
    if (v[k + 2] != cplx{1.0, 0.0}) {
      throw StructureError("v_" + std::to_string(k + 1) +
                           " lacks its unit coordinate entry");
    }
  }
  if (!opts.check_pairing) return;
  for (std::size_t k = 0; k + 1 < basis.size(); k += 2) {
    const auto partner = alamouti_partner(basis[k]);
    double worst = 0.0;
    for (std::size_t idx = 0; idx < partner.size(); ++idx) {
      worst = std::max(worst, std::abs(partner[idx] - basis[k + 1][idx]));
    }
    if (worst > kPairingTol) {
      throw StructureError("v_" + std::to_string(k + 2) +
                           " is not the Alamouti partner of v_" +
                           std::to_string(k + 1) + " (residual " +
                           std::to_string(worst) + ")");
    }
  }
}

inline std::vector<cplx> dense_normalized(std::vector<cplx> r, double& divisor,
                                          std::size_t which) {
  double s = 0.0;
  for (const auto& x : r) s += std::norm(x);
  divisor = std::sqrt(s);
  check_divisor(divisor, which);
  for (auto& x : r) x /= divisor;
  return r;
}

}  // namespace detail

/// Dense literal Gram-Schmidt, both branches computed. Uncounted.
inline GsRun gs_reference(std::span<const OrthoVector> basis) {
  const int n_rx = detail::n_rx_of(basis);
  const std::size_t len = basis.front().size();
  GsRun run;
  run.basis.n_rx = n_rx;
  auto& thetas = run.basis.thetas;

  auto dense = [](const OrthoVector& v) {
    return std::vector<cplx>(v.entries().begin(), v.entries().end());
  };

  for (std::size_t k = 0; k < 2; ++k) {
    double d = 0.0;
    thetas.push_back(OrthoVector::from_dense(
        detail::dense_normalized(dense(basis[k]), d, k + 1)));
    run.divisors.push_back(d);
  }

  for (int n = 2; n <= n_rx - 1; ++n) {
    const auto prior = static_cast<std::size_t>(2 * n - 2);
    std::vector<OrthoVector> step;
    for (std::size_t i : {prior, prior + 1}) {  // v_{2n-1}, v_{2n}
      const auto& v = basis[i];
      std::vector<cplx> c(prior);
      for (std::size_t j = 0; j < prior; ++j) c[j] = inner(thetas[j], v);
      std::vector<cplx> r = dense(v);
      for (std::size_t j = 0; j < prior; ++j) {
        for (std::size_t k = 0; k < len; ++k) r[k] -= c[j] * thetas[j][k];
      }
      double d = 0.0;
      step.push_back(
          OrthoVector::from_dense(detail::dense_normalized(std::move(r), d, i + 1)));
      run.divisors.push_back(d);
      (i == prior ? run.coefficients.odd : run.coefficients.even)
          .push_back(std::move(c));
    }
    for (auto& t : step) thetas.push_back(std::move(t));
  }
  return run;
}

/// Counted Gram-Schmidt exploiting sparsity and the Alamouti structure.
///
/// Cost of one step n (complex ops, then real ops):
///   coefficients    2 cmul + 1 cadd per theta_j (supports meet at {1, 2})
///   projection_sum  |supp theta_j| cmul per j, cadd on already-touched slots
///   subtract        1 cadd per slot of supp(v) U supp(sum)
///   normalize       norm over generic entries (2 rm + 1 ra each, plus one
///                   accumulation ra), 1 rm reciprocal, 2 rm per scaled entry;
///                   the unit coordinate entry becomes the reciprocal itself
/// theta_1 costs exactly 9 rm and 4 ra; every theta_{2n} is free.
inline GsRun gs_optimized(std::span<const OrthoVector> basis,
                          AccountingContext& ctx, const GsOptions& opts = {}) {
  const int n_rx = detail::n_rx_of(basis);
  detail::check_shape(basis, opts);
  const std::size_t len = basis.front().size();

  GsRun run;
  run.basis.n_rx = n_rx;
  auto& thetas = run.basis.thetas;
  const CountedComplex zero(ctx);

  // Normalizes a residual whose entry at `coord` is exactly 1.
  auto normalize = [&](std::span<const std::pair<std::size_t, CountedComplex>> generic,
                       std::size_t coord) {
    double acc = 1.0;  // |1|^2
    for (const auto& [idx, x] : generic) acc = ctx.radd(acc, norm_squared(x));
    const double divisor = ctx.sqrt(acc);
    detail::check_divisor(divisor, coord - 1);
    const double inv = ctx.reciprocal(divisor);
    OrthoVector theta(len);
    theta.set(coord, inv);
    for (const auto& [idx, x] : generic) theta.set(idx, scale_real(inv, x).value());
    run.divisors.push_back(divisor);
    return theta;
  };

  auto phase_start = ctx.snapshot();
  auto close_phase = [&](Phase p) {
    run.phases[p] = run.phases[p] + ctx.diff(phase_start);
    phase_start = ctx.snapshot();
  };

  {
    const auto& v1 = basis[0];
    std::vector<std::pair<std::size_t, CountedComplex>> generic;
    for (std::size_t idx : v1.support()) {
      if (idx != 2) generic.emplace_back(idx, CountedComplex(ctx, v1[idx]));
    }
    thetas.push_back(normalize(generic, 2));
    run.divisors.push_back(run.divisors.back());  // theta_2 shares the norm
    thetas.push_back(alamouti_partner(thetas[0]));
    close_phase(Phase::theta12);
  }

  std::vector<CountedComplex> scratch(len, zero);
  std::vector<bool> touched(len);

  for (int n = 2; n <= n_rx - 1; ++n) {
    const auto prior = static_cast<std::size_t>(2 * n - 2);
    const auto& v = basis[prior];  // v_{2n-1}
    const std::size_t coord = prior + 2;

    std::vector<CountedComplex> c;
    c.reserve(prior);
    for (std::size_t j = 0; j < prior; ++j) {
      const auto& theta = thetas[j];
      CountedComplex sum = zero;
      bool first = true;
      for (std::size_t idx : v.support()) {
        if (!theta.in_support(idx)) continue;
        const auto term = conj(CountedComplex(ctx, theta[idx])) *
                          CountedComplex(ctx, v[idx]);
        sum = first ? term : sum + term;
        first = false;
      }
      c.push_back(sum);
    }
    close_phase(Phase::coefficients);

    std::fill(scratch.begin(), scratch.end(), zero);
    std::fill(touched.begin(), touched.end(), false);
    for (std::size_t j = 0; j < prior; ++j) {
      const auto& theta = thetas[j];
      for (std::size_t idx : theta.support()) {
        const auto term = c[j] * CountedComplex(ctx, theta[idx]);
        scratch[idx] = touched[idx] ? scratch[idx] + term : term;
        touched[idx] = true;
      }
    }
    close_phase(Phase::projection_sum);

    if (touched[coord]) {
      throw StructureError("projection reached the unit coordinate of v_" +
                           std::to_string(prior + 1));
    }
    std::vector<std::pair<std::size_t, CountedComplex>> generic;
    for (std::size_t idx = 0; idx < len; ++idx) {
      const bool in_v = v.in_support(idx);
      if (!in_v && !touched[idx]) continue;
      const CountedComplex r = CountedComplex(ctx, v[idx]) - scratch[idx];
      if (idx != coord) generic.emplace_back(idx, r);
    }
    close_phase(Phase::subtract);

    thetas.push_back(normalize(generic, coord));
    run.divisors.push_back(run.divisors.back());
    thetas.push_back(alamouti_partner(thetas.back()));
    close_phase(Phase::normalize);

    std::vector<cplx> plain;
    plain.reserve(c.size());
    for (const auto& x : c) plain.push_back(x.value());
    run.coefficients.odd.push_back(std::move(plain));
  }
  return run;
}

// Checks. All uncounted.

/// max_{i,j} |theta_i^H theta_j - delta_ij|.
inline double verify_orthonormality(const OrthoBasis& b) {
  double worst = 0.0;
  const auto& t = b.thetas;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i; j < t.size(); ++j) {
      const cplx target = (i == j) ? cplx{1.0} : cplx{};
      worst = std::max(worst, std::abs(inner(t[i], t[j]) - target));
    }
  }
  return worst;
}

/// Largest entrywise magnitude difference between two bases.
inline double max_entrywise_diff(const OrthoBasis& a, const OrthoBasis& b) {
  if (a.thetas.size() != b.thetas.size()) {
    throw DomainError("bases differ in size");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.thetas.size(); ++i) {
    const auto& x = a.thetas[i];
    const auto& y = b.thetas[i];
    if (x.size() != y.size()) throw DomainError("vectors differ in length");
    for (std::size_t k = 0; k < x.size(); ++k) {
      worst = std::max(worst, std::abs(x[k] - y[k]));
    }
  }
  return worst;
}

/// Sparsity bound for theta_i (1-based i), as 0-based indices:
/// odd i = 2n-1 -> {1 .. 2n+1}; even i = 2n -> {1 .. 2n} U {2n+2}.
inline std::vector<std::size_t> sparsity_bound(std::size_t i) {
  if (i == 0) throw DomainError("theta indices are 1-based");
  const std::size_t n = (i + 1) / 2;
  std::vector<std::size_t> out;
  if (i % 2 == 1) {
    for (std::size_t p = 1; p <= 2 * n + 1; ++p) out.push_back(p - 1);
  } else {
    for (std::size_t p = 1; p <= 2 * n; ++p) out.push_back(p - 1);
    out.push_back(2 * n + 1);
  }
  return out;
}

/// Largest magnitude found outside the sparsity bound, over the whole basis.
inline double max_outside_sparsity_bound(const OrthoBasis& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < b.thetas.size(); ++i) {
    const auto bound = sparsity_bound(i + 1);
    const auto& t = b.thetas[i];
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (!std::binary_search(bound.begin(), bound.end(), k)) {
        worst = std::max(worst, std::abs(t[k]));
      }
    }
  }
  return worst;
}

/// True when every declared support lies inside its sparsity bound and is
/// exactly that bound.
inline bool declared_supports_match_bound(const OrthoBasis& b) {
  for (std::size_t i = 0; i < b.thetas.size(); ++i) {
    const auto bound = sparsity_bound(i + 1);
    const auto s = b.thetas[i].support();
    if (!std::equal(s.begin(), s.end(), bound.begin(), bound.end())) return false;
  }
  return true;
}

/// max_n max_k |theta_{2n}[k] - alamouti_partner(theta_{2n-1})[k]|.
inline double partner_consistency(const OrthoBasis& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < b.thetas.size(); i += 2) {
    const auto p = alamouti_partner(b.thetas[i]);
    const auto& even = b.thetas[i + 1];
    for (std::size_t k = 0; k < p.size(); ++k) {
      worst = std::max(worst, std::abs(p[k] - even[k]));
    }
  }
  return worst;
}

/// max_i ||v_i - sum_{j<=i} theta_j theta_j^H v_i|| / ||v_i||.
inline double span_residual(std::span<const OrthoVector> basis,
                            const OrthoBasis& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < basis.size() && i < b.thetas.size(); ++i) {
    const auto& v = basis[i];
    std::vector<cplx> r(v.entries().begin(), v.entries().end());
    for (std::size_t j = 0; j <= i; ++j) {
      const cplx c = inner(b.thetas[j], v);
      for (std::size_t k = 0; k < r.size(); ++k) r[k] -= c * b.thetas[j][k];
    }
    double s = 0.0;
    for (const auto& x : r) s += std::norm(x);
    worst = std::max(worst, std::sqrt(s) / v.norm());
  }
  return worst;
}

}  // namespace gscount
