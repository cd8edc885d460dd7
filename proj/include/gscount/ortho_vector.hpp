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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gscount/errors.hpp"

namespace gscount {

using cplx = std::complex<double>;

/// Complex vector with an explicit nonzero support.
///
/// Indices are 0-based in this API; documentation and file formats use
/// 1-based positions (position p is index p - 1). Every entry outside
/// `support()` is exactly zero: the only mutator, `set`, records the index.
class OrthoVector {
 public:
  OrthoVector() = default;
  explicit OrthoVector(std::size_t length) : entries_(length) {}

  /// Support is every index whose entry is not exactly zero.
  static OrthoVector from_dense(std::vector<cplx> entries) {
    OrthoVector v;
    v.entries_ = std::move(entries);
    for (std::size_t i = 0; i < v.entries_.size(); ++i) {
      if (v.entries_[i] != cplx{}) v.support_.push_back(i);
    }
    return v;
  }

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] std::span<const cplx> entries() const noexcept {
    return entries_;
  }
  [[nodiscard]] const cplx& operator[](std::size_t i) const {
    return entries_[i];
  }
  /// Sorted, duplicate-free declared support.
  [[nodiscard]] std::span<const std::size_t> support() const noexcept {
    return support_;
  }
  [[nodiscard]] bool in_support(std::size_t i) const noexcept {
    return std::binary_search(support_.begin(), support_.end(), i);
  }

  void set(std::size_t i, cplx value) {
    if (i >= entries_.size()) throw DomainError("OrthoVector index out of range");
    entries_[i] = value;
    auto it = std::lower_bound(support_.begin(), support_.end(), i);
    if (it == support_.end() || *it != i) support_.insert(it, i);
  }

  [[nodiscard]] double norm() const noexcept {
    double s = 0.0;
    for (std::size_t i : support_) s += std::norm(entries_[i]);
    return std::sqrt(s);
  }

 private:
  std::vector<cplx> entries_;
  std::vector<std::size_t> support_;
};

/// Indices whose magnitude exceeds `tol`.
inline std::vector<std::size_t> support_of(const OrthoVector& v, double tol) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > tol) out.push_back(i);
  }
  return out;
}

/// Blockwise Alamouti partner: for each 2-entry block (x1, x2) the result is
/// (-conj(x2), conj(x1)). Free of cost. Applying it twice negates.
inline OrthoVector alamouti_partner(const OrthoVector& in) {
  if (in.size() % 2 != 0) {
    throw DomainError("alamouti_partner needs an even-length vector, got " +
                      std::to_string(in.size()));
  }
  OrthoVector out(in.size());
  for (std::size_t i : in.support()) {
    // Index i moves to its block mate i ^ 1.
    if (i % 2 == 0) {
      out.set(i + 1, std::conj(in[i]));
    } else {
      out.set(i - 1, -std::conj(in[i]));
    }
  }
  return out;
}

/// Inner product x^H y over dense storage, uncounted.
inline cplx inner(const OrthoVector& x, const OrthoVector& y) {
  cplx s{};
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) s += std::conj(x[i]) * y[i];
  return s;
}

}  // namespace gscount
