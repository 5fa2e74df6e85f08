// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace bcrelay::cli {

/// "start:stop:step" (stop included when hit to within step/1e6) or a
/// comma-separated list. Throws std::invalid_argument for an empty grid, a
/// non-positive step, stop < start, or more than 100000 points.
std::vector<double> parse_grid(const std::string& text);

/// Canonical text of a grid for manifests.
std::string grid_text(const std::vector<double>& grid);

inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

/// Runs fn(i) for i in [0, n) on `workers` threads and returns the results in
/// index order. The first exception (lowest index) is rethrown.
template <class F>
auto parallel_map(std::size_t n, unsigned workers, F fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < w; ++t) {
    pool.emplace_back(body);
  }
  body();
  for (auto& t : pool) {
    t.join();
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return out;
}

} // namespace bcrelay::cli
