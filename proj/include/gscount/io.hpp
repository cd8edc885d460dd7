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

// JSON dumps of channels and orthonormal bases. Positions are 1-based.
//
//   channel: { "n_rx": N, "seed": s, "pairs": [[re_a, im_a, re_b, im_b], ...] }
//   basis:   { "n_rx": N, "thetas": [ { "index": i, "support": [...],
//                                       "entries": [[re, im], ...] }, ... ] }

#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "gscount/channel_basis.hpp"
#include "gscount/errors.hpp"
#include "gscount/ortho_kernel.hpp"

namespace gscount {

inline nlohmann::json channel_to_json(const ChannelPairs& ch) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : ch.pairs) {
    pairs.push_back({p.a.real(), p.a.imag(), p.b.real(), p.b.imag()});
  }
  return {{"n_rx", ch.n_rx}, {"seed", ch.seed}, {"pairs", std::move(pairs)}};
}

inline ChannelPairs channel_from_json(const nlohmann::json& j) {
  ChannelPairs ch;
  try {
    ch.n_rx = j.at("n_rx").get<int>();
    ch.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& p : j.at("pairs")) {
      if (p.size() != 4) throw DomainError("channel pair must have 4 numbers");
      ch.pairs.push_back({{p[0].get<double>(), p[1].get<double>()},
                          {p[2].get<double>(), p[3].get<double>()}});
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed channel dump: ") + e.what());
  }
  require_n_rx(ch.n_rx);
  if (ch.pairs.size() != static_cast<std::size_t>(2 * ch.n_rx - 2)) {
    throw DomainError("channel dump must hold 2N-2 pairs");
  }
  return ch;
}

inline nlohmann::json basis_to_json(const OrthoBasis& b) {
  nlohmann::json thetas = nlohmann::json::array();
  for (std::size_t i = 0; i < b.thetas.size(); ++i) {
    const auto& t = b.thetas[i];
    nlohmann::json support = nlohmann::json::array();
    for (std::size_t idx : t.support()) support.push_back(idx + 1);
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& x : t.entries()) entries.push_back({x.real(), x.imag()});
    thetas.push_back({{"index", i + 1},
                      {"support", std::move(support)},
                      {"entries", std::move(entries)}});
  }
  return {{"n_rx", b.n_rx}, {"thetas", std::move(thetas)}};
}

}  // namespace gscount
