#ifndef VARCONV_FFT_HPP
#define VARCONV_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace varconv::fft {

using cdouble = std::complex<double>;

std::size_t next_pow2(std::size_t n);
bool is_pow2(std::size_t n);

// In-place radix-2 transform; size must be a power of two.
// inverse=true applies the 1/N scaling.
void transform(std::vector<cdouble>& a, bool inverse);

std::vector<cdouble> forward(const std::vector<cdouble>& a);
std::vector<cdouble> forward_real(const std::vector<double>& a);
std::vector<cdouble> inverse(const std::vector<cdouble>& a);

// Linear convolution of real vectors via zero-padded FFT.
std::vector<double> convolve_real(const std::vector<double>& a, const std::vector<double>& b);

} // namespace varconv::fft

#endif
