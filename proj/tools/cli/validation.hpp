// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "schemes.hpp"
#include "table.hpp"

// Closed forms against simulation on a reproducible corpus of random
// parameter draws.

namespace bcrelay::cli {

/// Schemes covered by the corpus, in report order.
const std::vector<Scheme>& validated_schemes();

struct CorpusPoint {
  Scheme scheme = Scheme::direct;
  int draw = 0;
  double ps_db = 0.0;
  double pr_db = 0.0;
  double q_db = 0.0;
  TwoLayerAllocation alloc;
  double rate = 0.0;            ///< single-layer schemes only
  std::uint64_t sim_seed = 0;

  PowerConfig power() const;
};

/// `draws` points per scheme; a pure function of (draws, seed).
std::vector<CorpusPoint> validation_corpus(int draws, std::uint64_t seed,
                                           const std::vector<Scheme>& schemes = validated_schemes());

struct ValidationRow {
  CorpusPoint point;
  double closed_form = 0.0;
  SimEstimate mc;
  double z = 0.0;
  bool pass = false;
};

/// Simulates every point with `blocks` blocks and compares within `sigmas`
/// standard errors. Points are independent; rows come back in corpus order.
std::vector<ValidationRow> run_validation(const std::vector<CorpusPoint>& corpus,
                                          std::uint64_t blocks, double sigmas, unsigned workers,
                                          const std::function<void(const ValidationRow&)>& progress = {});

Table validation_table(const std::vector<ValidationRow>& rows);

} // namespace bcrelay::cli
