#include "qca/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace qca {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct FftPlan::Impl {
  fftw_plan plan = nullptr;
};

FftPlan::FftPlan(int dimension, int size, int howmany, FftDirection direction) : impl_(std::make_unique<Impl>()) {
  if (dimension < 1 || dimension > 3 || size < 1 || howmany < 1) {
    throw Error(ErrorCode::InvalidArgument, "invalid FFT shape");
  }
  std::vector<int> n(static_cast<std::size_t>(dimension), size);
  std::size_t sites = 1;
  for (int i = 0; i < dimension; ++i) sites *= static_cast<std::size_t>(size);
  length_ = sites * static_cast<std::size_t>(howmany);

  std::vector<Complex> scratch(length_);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const int sign = direction == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
  std::lock_guard lock(planner_mutex());
  impl_->plan = fftw_plan_many_dft(dimension, n.data(), howmany, buf, nullptr, howmany, 1, buf, nullptr, howmany, 1,
                                   sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (impl_->plan == nullptr) throw Error(ErrorCode::InvalidArgument, "FFTW could not create a plan");
}

FftPlan::~FftPlan() {
  if (impl_ && impl_->plan) {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(impl_->plan);
  }
}

void FftPlan::execute(std::span<Complex> data) const {
  if (data.size() != length_) throw Error(ErrorCode::InvalidArgument, "FFT buffer has the wrong length");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(impl_->plan, buf, buf);
}

const FftPlan& cached_plan(int dimension, int size, int howmany, FftDirection direction) {
  planner_mutex();  // must outlive the cache below
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int, FftDirection>, std::unique_ptr<FftPlan>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{dimension, size, howmany, direction}];
  if (!slot) slot = std::make_unique<FftPlan>(dimension, size, howmany, direction);
  return *slot;
}

}  // namespace qca
