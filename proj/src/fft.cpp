#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace fiohardy {

namespace {

std::mutex plan_mutex;
std::map<std::pair<int, int>, fftw_plan> plans;

fftw_plan plan_for(int N, int sign) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(N, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  // Scratch buffers only shape the plan; execution uses new-array calls.
  fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(N) * N);
  fftw_plan p = fftw_plan_dft_2d(N, N, buf, buf,
                                 sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  plans.emplace(key, p);
  return p;
}

} // namespace

void dft2d(int N, const std::complex<double>* in, std::complex<double>* out, int sign) {
  fftw_plan p = plan_for(N, sign);
  fftw_execute_dft(p,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

} // namespace fiohardy
