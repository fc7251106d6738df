#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace stratsim::detail {
namespace {

std::mutex plan_mutex;
std::map<std::pair<int, int>, fftw_plan>& plan_cache() {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  return cache;
}

// FFTW's planner is not thread safe; executing a cached plan on new arrays is.
// FFTW_UNALIGNED keeps the plan valid for whatever alignment std::vector gives us.
fftw_plan get_plan(int n, int sign) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = plan_cache().find(key);
  if (it != plan_cache().end()) return it->second;

  std::vector<std::complex<double>> a(static_cast<size_t>(n) * n);
  std::vector<std::complex<double>> b(static_cast<size_t>(n) * n);
  fftw_plan plan = fftw_plan_dft_2d(
      n, n, reinterpret_cast<fftw_complex*>(a.data()),
      reinterpret_cast<fftw_complex*>(b.data()), sign,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_cache().emplace(key, plan);
  return plan;
}

void execute(int n, int sign, const std::complex<double>* in,
             std::complex<double>* out) {
  fftw_plan plan = get_plan(n, sign);
  fftw_execute_dft(plan,
                   reinterpret_cast<fftw_complex*>(
                       const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void fft_forward(int n, const std::complex<double>* in,
                 std::complex<double>* out) {
  execute(n, FFTW_FORWARD, in, out);
}

void fft_backward(int n, const std::complex<double>* in,
                  std::complex<double>* out) {
  execute(n, FFTW_BACKWARD, in, out);
}

}  // namespace stratsim::detail
