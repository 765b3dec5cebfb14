#pragma once

#include <memory>
#include <span>
#include <vector>

#include "sadovskii/grid_field.hpp"

namespace sadovskii {

/// Discrete stream operator psi = G[omega] sampled at cell centers.
///
/// Source cells use the cell-integrated kernel of cell_log_weight; the image
/// term is handled by odd extension across the wall, which turns the whole
/// operator into one free-space convolution evaluated with FFTW. The result
/// equals the direct double sum to roundoff (see stream_direct).
///
/// apply() is const and safe to call concurrently.
class StreamOperator {
 public:
  explicit StreamOperator(const GridSpec& spec);
  ~StreamOperator();
  StreamOperator(StreamOperator&&) noexcept;
  StreamOperator& operator=(StreamOperator&&) noexcept;
  StreamOperator(const StreamOperator&) = delete;
  StreamOperator& operator=(const StreamOperator&) = delete;

  [[nodiscard]] const GridSpec& spec() const;

  [[nodiscard]] CellSamples apply(std::span<const double> omega) const;
  [[nodiscard]] CellSamples apply(const GridField& omega) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// O(N^2) reference evaluation of the same discrete operator.
CellSamples stream_direct(const GridField& omega);

}  // namespace sadovskii
