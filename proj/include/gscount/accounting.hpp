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

// Counted scalar arithmetic.
//
// Cost conventions (one "flop" is one real multiplication or one real
// addition):
//
//   complex * complex   4 rm, 2 ra
//   complex + complex   0 rm, 2 ra   (subtraction likewise)
//   real * real         1 rm
//   real + real         1 ra
//   real * complex      2 rm
//   1 / real            1 rm         (reciprocal, then multiply)
//   sqrt                free
//   conj, negate        free
//
// The division, square-root and real-scaling rules are inferred: they are the
// only choice under which normalizing the first basis vector costs exactly
// 9 rm and 4 ra.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>

#include "gscount/errors.hpp"

namespace gscount {

struct OpCounts {
  std::uint64_t real_mults = 0;
  std::uint64_t real_adds = 0;
  // Tallies of complex operations. Their real cost is already included in
  // real_mults / real_adds.
  std::uint64_t complex_mults = 0;
  std::uint64_t complex_adds = 0;

  [[nodiscard]] constexpr std::uint64_t total_flops() const noexcept {
    return real_mults + real_adds;
  }

  friend constexpr OpCounts operator+(OpCounts a, const OpCounts& b) noexcept {
    a.real_mults += b.real_mults;
    a.real_adds += b.real_adds;
    a.complex_mults += b.complex_mults;
    a.complex_adds += b.complex_adds;
    return a;
  }

  friend constexpr OpCounts operator-(OpCounts a, const OpCounts& b) noexcept {
    a.real_mults -= b.real_mults;
    a.real_adds -= b.real_adds;
    a.complex_mults -= b.complex_mults;
    a.complex_adds -= b.complex_adds;
    return a;
  }

  friend constexpr bool operator==(const OpCounts&, const OpCounts&) = default;

  friend std::ostream& operator<<(std::ostream& os, const OpCounts& c) {
    return os << "{rm=" << c.real_mults << ", ra=" << c.real_adds
              << ", cmul=" << c.complex_mults << ", cadd=" << c.complex_adds
              << "}";
  }
};

/// Mutable tally of real operations. Single owner: one context per trial,
/// never shared between threads.
class AccountingContext {
 public:
  AccountingContext() = default;
  AccountingContext(const AccountingContext&) = delete;
  AccountingContext& operator=(const AccountingContext&) = delete;

  [[nodiscard]] OpCounts snapshot() const noexcept { return counts_; }
  void reset() noexcept { counts_ = {}; }
  /// Operations charged since `since` was taken.
  [[nodiscard]] OpCounts diff(const OpCounts& since) const noexcept {
    return counts_ - since;
  }

  double rmul(double x, double y) noexcept {
    ++counts_.real_mults;
    return x * y;
  }

  double radd(double x, double y) noexcept {
    ++counts_.real_adds;
    return x + y;
  }

  double reciprocal(double x) noexcept {
    ++counts_.real_mults;
    return 1.0 / x;
  }

  double sqrt(double x) const noexcept { return std::sqrt(x); }

  void charge_cmul() noexcept {
    ++counts_.complex_mults;
    counts_.real_mults += 4;
    counts_.real_adds += 2;
  }

  void charge_cadd() noexcept {
    ++counts_.complex_adds;
    counts_.real_adds += 2;
  }

  void charge_scale_real() noexcept { counts_.real_mults += 2; }

 private:
  OpCounts counts_;
};

/// Complex scalar bound to an accounting context. Arithmetic charges the
/// context; the charge depends only on the operation, never on the values.
class CountedComplex {
 public:
  using value_type = std::complex<double>;

  explicit CountedComplex(AccountingContext& ctx, value_type v = {}) noexcept
      : value_(v), ctx_(&ctx) {}

  [[nodiscard]] value_type value() const noexcept { return value_; }
  [[nodiscard]] double real() const noexcept { return value_.real(); }
  [[nodiscard]] double imag() const noexcept { return value_.imag(); }
  [[nodiscard]] AccountingContext& context() const noexcept { return *ctx_; }

  friend CountedComplex operator*(const CountedComplex& x,
                                  const CountedComplex& y) {
    auto& ctx = same_context(x, y);
    ctx.charge_cmul();
    return CountedComplex(ctx, x.value_ * y.value_);
  }

  friend CountedComplex operator+(const CountedComplex& x,
                                  const CountedComplex& y) {
    auto& ctx = same_context(x, y);
    ctx.charge_cadd();
    return CountedComplex(ctx, x.value_ + y.value_);
  }

  friend CountedComplex operator-(const CountedComplex& x,
                                  const CountedComplex& y) {
    auto& ctx = same_context(x, y);
    ctx.charge_cadd();
    return CountedComplex(ctx, x.value_ - y.value_);
  }

  friend CountedComplex operator-(const CountedComplex& x) noexcept {
    return CountedComplex(*x.ctx_, -x.value_);
  }

  CountedComplex& operator*=(const CountedComplex& y) { return *this = *this * y; }
  CountedComplex& operator+=(const CountedComplex& y) { return *this = *this + y; }
  CountedComplex& operator-=(const CountedComplex& y) { return *this = *this - y; }

 private:
  static AccountingContext& same_context(const CountedComplex& x,
                                         const CountedComplex& y) {
    if (x.ctx_ != y.ctx_) {
      throw UsageError("counted operands are bound to different contexts");
    }
    return *x.ctx_;
  }

  value_type value_;
  AccountingContext* ctx_;
};

inline CountedComplex cmul(const CountedComplex& x, const CountedComplex& y) {
  return x * y;
}

inline CountedComplex cadd(const CountedComplex& x, const CountedComplex& y) {
  return x + y;
}

inline CountedComplex conj(const CountedComplex& x) noexcept {
  return CountedComplex(x.context(), std::conj(x.value()));
}

inline CountedComplex negate(const CountedComplex& x) noexcept { return -x; }

inline CountedComplex scale_real(double c, const CountedComplex& x) noexcept {
  x.context().charge_scale_real();
  return CountedComplex(x.context(), c * x.value());
}

inline double rmul(AccountingContext& ctx, double x, double y) noexcept {
  return ctx.rmul(x, y);
}

inline double radd(AccountingContext& ctx, double x, double y) noexcept {
  return ctx.radd(x, y);
}

/// |z|^2 as two real multiplications and one real addition.
inline double norm_squared(const CountedComplex& z) noexcept {
  auto& ctx = z.context();
  return ctx.radd(ctx.rmul(z.real(), z.real()), ctx.rmul(z.imag(), z.imag()));
}

}  // namespace gscount
