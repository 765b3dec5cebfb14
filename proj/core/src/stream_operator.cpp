#include "sadovskii/stream_operator.hpp"

#include <fftw3.h>

#include <complex>
#include <cstdlib>
#include <memory>

#include "sadovskii/error.hpp"
#include "sadovskii/kernel.hpp"

namespace sadovskii {
namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

RealBuffer alloc_real(std::size_t n) {
  auto* p = fftw_alloc_real(n);
  if (p == nullptr) throw std::bad_alloc();
  return RealBuffer(p);
}

ComplexBuffer alloc_complex(std::size_t n) {
  auto* p = fftw_alloc_complex(n);
  if (p == nullptr) throw std::bad_alloc();
  return ComplexBuffer(p);
}

}  // namespace

// Padded layout: rows = 4*ny (odd extension spans 2*ny rows, kernel offsets
// span 4*ny - 1), cols = 2*nx. Circular convolution equals linear convolution
// on the target block.
struct StreamOperator::Impl {
  GridSpec spec;
  int rows = 0;
  int cols = 0;
  int ccols = 0;
  ComplexBuffer kernel_hat;
  Plan forward;
  Plan backward;

  explicit Impl(const GridSpec& s) : spec(s) {
    spec.validate();
    rows = 4 * spec.ny;
    cols = 2 * spec.nx;
    ccols = cols / 2 + 1;
    const std::size_t nreal = static_cast<std::size_t>(rows) * cols;
    const std::size_t ncomplex = static_cast<std::size_t>(rows) * ccols;

    RealBuffer kernel = alloc_real(nreal);
    kernel_hat = alloc_complex(ncomplex);

    for (int r = 0; r < rows; ++r) {
      // Row offset dj in (-2ny, 2ny); index r wraps negative offsets.
      const int dj = r < 2 * spec.ny ? r : r - rows;
      for (int c = 0; c < cols; ++c) {
        const int di = c < spec.nx ? c : c - cols;
        double w = 0.0;
        if (di > -spec.nx && di < spec.nx && dj > -2 * spec.ny && dj < 2 * spec.ny) {
          w = cell_log_weight(di * spec.cell, dj * spec.cell, spec.cell);
        }
        kernel[static_cast<std::size_t>(r) * cols + c] = w;
      }
    }

    Plan kplan(fftw_plan_dft_r2c_2d(rows, cols, kernel.get(), kernel_hat.get(), FFTW_ESTIMATE));
    fftw_execute(kplan.get());

    RealBuffer scratch_r = alloc_real(nreal);
    ComplexBuffer scratch_c = alloc_complex(ncomplex);
    forward.reset(fftw_plan_dft_r2c_2d(rows, cols, scratch_r.get(), scratch_c.get(), FFTW_ESTIMATE));
    backward.reset(fftw_plan_dft_c2r_2d(rows, cols, scratch_c.get(), scratch_r.get(), FFTW_ESTIMATE));
  }
};

StreamOperator::StreamOperator(const GridSpec& spec) : impl_(std::make_unique<Impl>(spec)) {}
StreamOperator::~StreamOperator() = default;
StreamOperator::StreamOperator(StreamOperator&&) noexcept = default;
StreamOperator& StreamOperator::operator=(StreamOperator&&) noexcept = default;

const GridSpec& StreamOperator::spec() const { return impl_->spec; }

CellSamples StreamOperator::apply(std::span<const double> omega) const {
  const Impl& m = *impl_;
  const GridSpec& g = m.spec;
  if (omega.size() != g.size()) {
    throw InvalidArgument("StreamOperator::apply: field size does not match the grid");
  }
  const std::size_t nreal = static_cast<std::size_t>(m.rows) * m.cols;
  const std::size_t ncomplex = static_cast<std::size_t>(m.rows) * m.ccols;
  RealBuffer buf = alloc_real(nreal);
  ComplexBuffer spec_buf = alloc_complex(ncomplex);
  std::fill(buf.get(), buf.get() + nreal, 0.0);

  // Extended row e = j + ny holds omega(j); e = ny - 1 - j holds -omega(j).
  for (int j = 0; j < g.ny; ++j) {
    double* up = buf.get() + static_cast<std::size_t>(j + g.ny) * m.cols;
    double* down = buf.get() + static_cast<std::size_t>(g.ny - 1 - j) * m.cols;
    for (int i = 0; i < g.nx; ++i) {
      const double w = omega[g.index(i, j)];
      up[i] = w;
      down[i] = -w;
    }
  }

  fftw_execute_dft_r2c(m.forward.get(), buf.get(), spec_buf.get());
  for (std::size_t k = 0; k < ncomplex; ++k) {
    const std::complex<double> a(spec_buf[k][0], spec_buf[k][1]);
    const std::complex<double> b(m.kernel_hat[k][0], m.kernel_hat[k][1]);
    const std::complex<double> c = a * b;
    spec_buf[k][0] = c.real();
    spec_buf[k][1] = c.imag();
  }
  fftw_execute_dft_c2r(m.backward.get(), spec_buf.get(), buf.get());

  // psi = -(1/2pi) sum_ext omega_ext * L; FFTW leaves a factor rows*cols.
  const double scale = -1.0 / (2.0 * kPi * static_cast<double>(nreal));
  CellSamples out{g, std::vector<double>(g.size())};
  for (int j = 0; j < g.ny; ++j) {
    const double* row = buf.get() + static_cast<std::size_t>(j + g.ny) * m.cols;
    for (int i = 0; i < g.nx; ++i) out.values[g.index(i, j)] = scale * row[i];
  }
  return out;
}

CellSamples StreamOperator::apply(const GridField& omega) const {
  if (!(omega.spec() == impl_->spec)) {
    throw InvalidArgument("StreamOperator::apply: grid mismatch");
  }
  return apply(omega.values());
}

CellSamples stream_direct(const GridField& omega) {
  const GridSpec& g = omega.spec();
  CellSamples out{g, std::vector<double>(g.size(), 0.0)};
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      double acc = 0.0;
      for (int jj = 0; jj < g.ny; ++jj) {
        for (int ii = 0; ii < g.nx; ++ii) {
          const double w = omega.at(ii, jj);
          if (w == 0.0) continue;
          const double d1 = (i - ii) * g.cell;
          acc += w * (cell_log_weight(d1, (j + jj + 1) * g.cell, g.cell) -
                      cell_log_weight(d1, (j - jj) * g.cell, g.cell));
        }
      }
      out.values[g.index(i, j)] = acc / (2.0 * kPi);
    }
  }
  return out;
}

}  // namespace sadovskii
