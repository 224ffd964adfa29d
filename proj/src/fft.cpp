#include "varconv/fft.hpp"

#include <cmath>
#include <numbers>

#include "varconv/error.hpp"

namespace varconv::fft {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void transform(std::vector<cdouble>& a, bool inv) {
  const std::size_t n = a.size();
  if (!is_pow2(n)) fail(errc::config_error, "fft size must be a power of two");
  if (n == 1) return;

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inv ? 1.0 : -1.0);
    const cdouble wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cdouble w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        cdouble u = a[i + k];
        cdouble v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }

  if (inv) {
    const double s = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= s;
  }
}

std::vector<cdouble> forward(const std::vector<cdouble>& a) {
  std::vector<cdouble> out = a;
  transform(out, false);
  return out;
}

std::vector<cdouble> forward_real(const std::vector<double>& a) {
  std::vector<cdouble> out(a.begin(), a.end());
  transform(out, false);
  return out;
}

std::vector<cdouble> inverse(const std::vector<cdouble>& a) {
  std::vector<cdouble> out = a;
  transform(out, true);
  return out;
}

std::vector<double> convolve_real(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(out_len);
  std::vector<cdouble> fa(n, cdouble{}), fb(n, cdouble{});
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  transform(fa, false);
  transform(fb, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  transform(fa, true);
  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real();
  return out;
}

} // namespace varconv::fft
