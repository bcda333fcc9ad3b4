#pragma once

#include <memory>
#include <span>

#include "qca/types.hpp"

namespace qca {

enum class FftDirection { Forward, Backward };

/// In-place multidimensional DFT over an N^d torus applied to `howmany`
/// interleaved components (site-major layout, component stride 1).
///
/// Forward uses e^{-i q.n}; Backward is unnormalized.
class FftPlan {
 public:
  FftPlan(int dimension, int size, int howmany, FftDirection direction);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  /// Thread-safe for distinct buffers.
  void execute(std::span<Complex> data) const;

  std::size_t length() const noexcept { return length_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::size_t length_;
};

/// Shared plan for the given shape; planning is serialized internally.
const FftPlan& cached_plan(int dimension, int size, int howmany, FftDirection direction);

}  // namespace qca
