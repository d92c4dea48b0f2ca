#pragma once

#include <vector>

#include "crl/chargroup.hpp"

namespace crl {

// Unnormalized complex DFT of arbitrary length n (FFTW behind the scenes):
//   sign = +1:  out[k] = sum_t in[t] e(+ k t / n)
//   sign = -1:  out[k] = sum_t in[t] e(- k t / n)
// Plan creation is not thread-safe; call from one thread at a time.
std::vector<cplx> dft(const std::vector<cplx>& in, int sign);

} // namespace crl
