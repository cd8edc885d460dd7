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

// Closed-form cost model of the ML-based IC detector and of the MMSE IC
// detector it is compared against. Everything is evaluated in exact rational
// arithmetic; the fractional coefficients always cancel to integers.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "gscount/errors.hpp"

namespace gscount {

using Rational = boost::rational<std::int64_t>;

namespace detail {

inline std::int64_t exact_integer(const Rational& q, std::string_view what) {
  if (q.denominator() != 1) {
    throw std::logic_error(std::string(what) + " is not an integer");
  }
  return q.numerator();
}

inline void require_model_n(int n) {
  if (n < 2) {
    throw DomainError("cost model needs N >= 2, got " + std::to_string(n));
  }
}

}  // namespace detail

/// Rows of the per-equation cost table. eq9_11, eq23, eq25 and eq28 are
/// model-only; eq13 and eq14 are the orthonormalization.
enum class EqId { eq9_11, eq13, eq14, eq23, eq25, eq28, sum };

inline constexpr std::array<EqId, 6> kConstituentRows = {
    EqId::eq9_11, EqId::eq13, EqId::eq14, EqId::eq23, EqId::eq25, EqId::eq28};

constexpr std::string_view eq_name(EqId id) noexcept {
  switch (id) {
    case EqId::eq9_11: return "(9) and (11)";
    case EqId::eq13: return "(13)";
    case EqId::eq14: return "(14)";
    case EqId::eq23: return "(23)";
    case EqId::eq25: return "(25)";
    case EqId::eq28: return "(28)";
    case EqId::sum: return "Sum";
  }
  return "?";
}

struct ComplexityRow {
  EqId id = EqId::sum;
  std::int64_t cmul = 0;
  std::int64_t cadd = 0;
  std::int64_t rm = 0;
  std::int64_t ra = 0;
  friend bool operator==(const ComplexityRow&, const ComplexityRow&) = default;
};

struct DetectorCost {
  std::int64_t rm = 0;
  std::int64_t ra = 0;
  std::int64_t total = 0;
  friend bool operator==(const DetectorCost&, const DetectorCost&) = default;
};

inline ComplexityRow table1_row(EqId id, int n) {
  detail::require_model_n(n);
  const Rational N(n);
  const Rational third(1, 3);
  Rational cmul, cadd, rm, ra;
  switch (id) {
    case EqId::eq9_11:
      cmul = 4 * (N - 1);
      cadd = 2 * (N - 1);
      rm = 4 * (N - 1) + 4;
      ra = 3;
      break;
    case EqId::eq13:
      rm = 9;
      ra = 4;
      break;
    case EqId::eq14:
      cmul = 2 * third * N * (N - 1) * (N - 2);
      cadd = cmul;
      rm = (6 * N + 5) * (N - 2);
      ra = 2 * (N + 1) * (N - 2);
      break;
    case EqId::eq23:
    case EqId::eq25:
      cmul = 2 * (N - 1) * N;
      cadd = cmul;
      rm = 4 * (N - 1);
      break;
    case EqId::eq28:
      cmul = 4 * N;
      cadd = 4 * N;
      break;
    case EqId::sum:
      cmul = 2 * third * N * N * N + 2 * N * N + 16 * third * N - 4;
      cadd = 2 * third * N * N * N + 2 * N * N + 10 * third * N - 2;
      rm = 6 * N * N + 5 * N - 9;
      ra = 2 * N * N - 2 * N + 3;
      break;
  }
  return {id, detail::exact_integer(cmul, "cmul"),
          detail::exact_integer(cadd, "cadd"), detail::exact_integer(rm, "rm"),
          detail::exact_integer(ra, "ra")};
}

/// Real-op equivalent of a row: a complex multiplication is 4 rm + 2 ra, a
/// complex addition is 2 ra.
constexpr DetectorCost to_real_ops(const ComplexityRow& row) noexcept {
  const std::int64_t rm = 4 * row.cmul + row.rm;
  const std::int64_t ra = 2 * row.cmul + 2 * row.cadd + row.ra;
  return {rm, ra, rm + ra};
}

/// ML-based IC detector.
inline DetectorCost ml_cost(int n) {
  detail::require_model_n(n);
  const Rational N(n);
  const Rational rm = Rational(8, 3) * N * N * N + 14 * N * N + Rational(79, 3) * N - 25;
  const Rational ra = Rational(8, 3) * N * N * N + 10 * N * N + Rational(46, 3) * N - 9;
  const Rational total =
      Rational(16, 3) * N * N * N + 24 * N * N + Rational(125, 3) * N - 34;
  return {detail::exact_integer(rm, "ml rm"), detail::exact_integer(ra, "ml ra"),
          detail::exact_integer(total, "ml total")};
}

/// MMSE IC detector. Only the total is published in closed form; the rm/ra
/// split is an exact polynomial fit to the published table.
inline DetectorCost mmse_cost(int n) {
  detail::require_model_n(n);
  const Rational N(n);
  const Rational rm = 8 * N * N * N + 16 * N * N;
  const Rational ra = 7 * N * N * N + Rational(41, 2) * N * N - Rational(3, 2) * N;
  const Rational total = 15 * N * N * N + Rational(73, 2) * N * N - Rational(3, 2) * N;
  return {detail::exact_integer(rm, "mmse rm"),
          detail::exact_integer(ra, "mmse ra"),
          detail::exact_integer(total, "mmse total")};
}

/// The originally claimed quadratic cost: 7N^2+62N-103 rm, 12N^2+47N-103 ra.
inline DetectorCost ref1_claimed_cost(int n) {
  detail::require_model_n(n);
  const std::int64_t N = n;
  const std::int64_t rm = 7 * N * N + 62 * N - 103;
  const std::int64_t ra = 12 * N * N + 47 * N - 103;
  return {rm, ra, rm + ra};
}

struct Table2Row {
  int n = 0;
  DetectorCost ml;
  DetectorCost mmse;
  /// mmse.total / ml.total
  double ratio = 0.0;
  friend bool operator==(const Table2Row&, const Table2Row&) = default;
};

inline std::vector<Table2Row> table2(int n_min, int n_max) {
  detail::require_model_n(n_min);
  if (n_max < n_min) throw DomainError("empty N range");
  std::vector<Table2Row> rows;
  for (int n = n_min; n <= n_max; ++n) {
    Table2Row r{n, ml_cost(n), mmse_cost(n), 0.0};
    r.ratio = static_cast<double>(r.mmse.total) / static_cast<double>(r.ml.total);
    rows.push_back(r);
  }
  return rows;
}

struct GoldenRow {
  int n;
  DetectorCost ml;
  DetectorCost mmse;
};

/// Published comparison table, N = 2 .. 8.
inline constexpr std::array<GoldenRow, 7> kTable2Golden = {{
    {2, {105, 83, 188}, {128, 135, 263}},
    {3, {252, 199, 451}, {360, 369, 729}},
    {4, {475, 383, 858}, {768, 770, 1538}},
    {5, {790, 651, 1441}, {1400, 1380, 2780}},
    {6, {1213, 1019, 2232}, {2304, 2241, 4545}},
    {7, {1760, 1503, 3263}, {3528, 3395, 6923}},
    {8, {2447, 2119, 4566}, {5120, 4884, 10004}},
}};

/// True when every row with 2 <= N <= 8 equals the published values.
inline bool matches_golden(std::span<const Table2Row> rows) {
  for (const auto& r : rows) {
    for (const auto& g : kTable2Golden) {
      if (g.n == r.n && (g.ml != r.ml || g.mmse != r.mmse)) return false;
    }
  }
  return true;
}

}  // namespace gscount
