#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace stopwise {

// C(n, k) as an exact unsigned 128-bit integer. Overflow-checked; fine for
// every n used by the exchangeable identities (n well below 100).
inline unsigned __int128 binomial_u128(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (long i = 1; i <= k; ++i) {
    unsigned __int128 num = static_cast<unsigned __int128>(n - k + i);
    unsigned __int128 prev = r;
    r = r * num;
    if (num != 0 && r / num != prev) {
      throw std::overflow_error("binomial_u128: overflow");
    }
    r /= static_cast<unsigned __int128>(i);
  }
  return r;
}

inline double binomial_double(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  if (n <= 60) return static_cast<double>(binomial_u128(n, k));
  return std::exp(std::lgamma(static_cast<double>(n) + 1.0) -
                  std::lgamma(static_cast<double>(k) + 1.0) -
                  std::lgamma(static_cast<double>(n - k) + 1.0));
}

}  // namespace stopwise
