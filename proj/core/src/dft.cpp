// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include "sparsetf/dft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "sparsetf/errors.hpp"

namespace sparsetf {

namespace {

// Plan creation is not thread safe and not free, so plans are cached per
// (size, direction). FFTW_UNALIGNED keeps them valid for any array passed to
// fftw_execute_dft, which itself is thread safe.
fftw_plan plan_for(int n, int sign) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n));
  fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(scratch.data()),
                                    reinterpret_cast<fftw_complex*>(scratch.data()), sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, plan);
  return plan;
}

std::vector<std::complex<double>> run_dft(std::span<const std::complex<double>> x, int sign) {
  const int n = static_cast<int>(x.size());
  if (n == 0) throw InvalidInputError("dft: empty input");
  std::vector<std::complex<double>> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(x.size());
  fftw_execute_dft(plan_for(n, sign), reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<std::complex<double>> dft_forward(std::span<const double> x) {
  std::vector<std::complex<double>> cx(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) cx[i] = x[i];
  return dft_forward(cx);
}

std::vector<std::complex<double>> dft_forward(std::span<const std::complex<double>> x) {
  auto out = run_dft(x, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(x.size());
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<std::complex<double>> dft_inverse(std::span<const std::complex<double>> x) {
  return run_dft(x, FFTW_BACKWARD);
}

}  // namespace sparsetf
