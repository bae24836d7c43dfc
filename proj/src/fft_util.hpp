#pragma once

#include <complex>
#include <mutex>
#include <vector>

namespace beatty::detail {

// FFTW's planner is not thread safe; execution is.
std::mutex& fftw_planner_mutex();

// out[t] = sum_j in[j] e(+j t / n), n = in.size().
std::vector<std::complex<double>> dft_positive(std::vector<std::complex<double>> in);

}  // namespace beatty::detail
