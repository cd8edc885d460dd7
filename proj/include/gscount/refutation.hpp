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

// Measured orthonormalization cost versus the claimed quadratic cost and the
// corrected cubic model.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gscount/accounting.hpp"
#include "gscount/channel_basis.hpp"
#include "gscount/complexity_model.hpp"
#include "gscount/ortho_kernel.hpp"

namespace gscount {

inline constexpr double kCorrectedLeadingCoefficient = 16.0 / 3.0;
/// Claims about the quadratic cost are checked from this N upward.
inline constexpr int kRefutationMinN = 10;

struct GsMeasurement {
  int n = 0;
  PhaseCosts phases;
  [[nodiscard]] OpCounts total() const { return phases.total(); }
};

/// One counted orthonormalization of a seeded channel on a private context.
inline GsMeasurement measure_gs(int n_rx, std::uint64_t seed) {
  const auto basis = build_basis(gen_channel(n_rx, seed));
  AccountingContext ctx;
  const auto run = gs_optimized(basis, ctx);
  return {n_rx, run.phases};
}

/// Model cost of the orthonormalization alone: rows (13) + (14).
inline ComplexityRow gs_model_row(int n) {
  const auto a = table1_row(EqId::eq13, n);
  const auto b = table1_row(EqId::eq14, n);
  return {EqId::sum, a.cmul + b.cmul, a.cadd + b.cadd, a.rm + b.rm, a.ra + b.ra};
}

/// sum_{n=2}^{N-1} sum_{j=1}^{2n-2} j: the multiplication count the projection
/// sums must exceed.
constexpr std::int64_t projection_mult_lower_bound(int n_rx) noexcept {
  std::int64_t s = 0;
  for (std::int64_t n = 2; n <= n_rx - 1; ++n) s += (n - 1) * (2 * n - 1);
  return s;
}

/// Least-squares fit of totals ~ a N^3 + b N^2 + c N + d, returning a. With
/// fewer than four points the lowest-order terms are dropped.
inline double fit_leading_cubic(std::span<const int> ns,
                                std::span<const double> totals) {
  if (ns.empty() || ns.size() != totals.size()) {
    throw DomainError("fit needs matching, nonempty samples");
  }
  const auto terms = static_cast<Eigen::Index>(std::min<std::size_t>(4, ns.size()));
  const double scale = *std::max_element(ns.begin(), ns.end());
  Eigen::MatrixXd a(static_cast<Eigen::Index>(ns.size()), terms);
  Eigen::VectorXd y(static_cast<Eigen::Index>(ns.size()));
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    const double x = ns[static_cast<std::size_t>(r)] / scale;
    for (Eigen::Index c = 0; c < terms; ++c) a(r, c) = std::pow(x, 3 - c);
    y(r) = totals[static_cast<std::size_t>(r)];
  }
  const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(y);
  return coef(0) / (scale * scale * scale);
}

struct RefutationRecord {
  int n = 0;
  DetectorCost ml_model;
  DetectorCost mmse_model;
  DetectorCost ref1_claimed;
  OpCounts measured_gs;
  PhaseCosts measured_phases;
  double ratio_mmse_over_ml = 0.0;
  /// Same counts for every seed tried at this N.
  bool seed_independent = true;
};

struct RefutationReport {
  std::vector<RefutationRecord> rows;
  double fitted_leading = 0.0;
  /// False when the range lies entirely below kRefutationMinN.
  bool fit_asserted = false;
  bool measured_exceeds_claimed = true;
  bool fit_within_tolerance = true;
  bool seeds_consistent = true;

  [[nodiscard]] bool pass() const {
    return measured_exceeds_claimed && fit_within_tolerance && seeds_consistent;
  }
};

inline RefutationReport refutation_report(int n_min, int n_max,
                                          std::uint64_t base_seed,
                                          int trials = 1,
                                          double fit_tolerance = 0.15) {
  detail::require_model_n(n_min);
  if (n_max < n_min) throw DomainError("empty N range");
  if (trials < 1) throw DomainError("trials must be >= 1");

  RefutationReport report;
  std::vector<int> fit_n;
  std::vector<double> fit_total;
  for (int n = n_min; n <= n_max; ++n) {
    RefutationRecord rec;
    rec.n = n;
    rec.ml_model = ml_cost(n);
    rec.mmse_model = mmse_cost(n);
    rec.ref1_claimed = ref1_claimed_cost(n);
    rec.ratio_mmse_over_ml = static_cast<double>(rec.mmse_model.total) /
                             static_cast<double>(rec.ml_model.total);
    for (int t = 0; t < trials; ++t) {
      const auto m = measure_gs(n, trial_seed(base_seed, static_cast<std::uint64_t>(t)));
      if (t == 0) {
        rec.measured_phases = m.phases;
      } else if (!(m.phases == rec.measured_phases)) {
        rec.seed_independent = false;
      }
    }
    rec.measured_gs = rec.measured_phases.total();
    report.seeds_consistent = report.seeds_consistent && rec.seed_independent;
    if (n >= kRefutationMinN) {
      if (static_cast<std::int64_t>(rec.measured_gs.total_flops()) <=
          rec.ref1_claimed.total) {
        report.measured_exceeds_claimed = false;
      }
      fit_n.push_back(n);
      fit_total.push_back(static_cast<double>(rec.measured_gs.total_flops()));
    }
    report.rows.push_back(rec);
  }

  report.fit_asserted = !fit_n.empty();
  if (!report.fit_asserted) {
    for (const auto& r : report.rows) {
      fit_n.push_back(r.n);
      fit_total.push_back(static_cast<double>(r.measured_gs.total_flops()));
    }
  }
  report.fitted_leading = fit_leading_cubic(fit_n, fit_total);
  if (report.fit_asserted) {
    report.fit_within_tolerance =
        std::abs(report.fitted_leading - kCorrectedLeadingCoefficient) <=
        fit_tolerance * kCorrectedLeadingCoefficient;
  }
  return report;
}

}  // namespace gscount
