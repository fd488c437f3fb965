#include "friedrichs/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace friedrichs {

namespace {

std::mutex plan_mutex;

fftw_plan plan_for(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  // FFTW_ESTIMATE leaves the scratch arrays untouched; the plan is reused with new-array execute.
  cvec scratch(n);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_1d(n, p, p, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

void fft_inplace(cvec& data, int sign) {
  if (data.empty()) return;
  fftw_plan plan = plan_for(static_cast<int>(data.size()), sign);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

}  // namespace friedrichs
