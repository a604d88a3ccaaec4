#ifndef COINRUNS_BINOMIALS_HPP
#define COINRUNS_BINOMIALS_HPP

#include <cmath>

#include "coinruns/rational.hpp"

namespace coinruns {

// Convention used throughout: C(a, b) = 0 if b < 0, a < 0, or b > a.

inline long double log_binom(long long a, long long b) {
    return std::lgamma(static_cast<long double>(a) + 1) -
           std::lgamma(static_cast<long double>(b) + 1) -
           std::lgamma(static_cast<long double>(a - b) + 1);
}

inline long double binom_ld(long long a, long long b) {
    if (b < 0 || a < 0 || b > a) return 0.0L;
    if (b > a - b) b = a - b;
    if (b == 0) return 1.0L;
    if (a > 4000000) return std::exp(log_binom(a, b));
    long double r = 1.0L;
    for (long long i = 1; i <= b; ++i) {
        r *= static_cast<long double>(a - b + i);
        r /= static_cast<long double>(i);
        if (r > 1e4900L) return std::exp(log_binom(a, b));
    }
    return r;
}

inline double binom_d(long long a, long long b) { return static_cast<double>(binom_ld(a, b)); }

inline BigInt binom_big(long long a, long long b) {
    if (b < 0 || a < 0 || b > a) return 0;
    if (b > a - b) b = a - b;
    BigInt r = 1;
    for (long long i = 1; i <= b; ++i) {
        r *= (a - b + i);
        r /= i;  // exact: r is C(a-b+i, i) after each step
    }
    return r;
}

template <class T>
T binom_as(long long a, long long b) {
    if constexpr (is_rational_v<T>)
        return T(binom_big(a, b));
    else
        return static_cast<T>(binom_ld(a, b));
}

template <class T>
T factorial_as(long long k) {
    T r(1);
    for (long long i = 2; i <= k; ++i) r *= T(i);
    return r;
}

// Falling factorial (N)_r = N(N-1)...(N-r+1) under the binomial-coefficient
// convention, i.e. r! * C(N, r); zero when N < r. This is the form that the
// w-expansion of the stopped joint moments produces for finite n.
template <class T>
T falling_factorial_as(long long N, long long r) {
    if (N < r || N < 0) return T(0);
    T v(1);
    for (long long i = 0; i < r; ++i) v *= T(N - i);
    return v;
}

}  // namespace coinruns

#endif
