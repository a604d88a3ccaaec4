#ifndef COINRUNS_MOMENTS_HPP
#define COINRUNS_MOMENTS_HPP

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "coinruns/binomials.hpp"
#include "coinruns/params.hpp"

namespace coinruns::moments {

// Result of an alternating-sum evaluation in float mode, with the
// cancellation monitor's diagnostics. cancellation = max|term| / |result|.
struct Monitored {
    double value = 0.0;
    double cancellation = 0.0;
    bool used_rational = false;
};

inline constexpr double kCancellationLimit = 1e8;

// r-th binomial moment of the count of runs of length >= ell in n tosses:
// E C(G_ell(n), r) = p^{lr} q^{r-1} [C(n+1-lr, r) - p C(n-lr, r)].
// Extended to r = 0 with value 1 so pmf inversion needs no special case.
template <class T>
T binom_moment_g(long long n, int ell, int r, const T& p) {
    if (n < 0 || ell < 1 || r < 0) throw std::invalid_argument("binom_moment_g: bad arguments");
    if (r == 0) return T(1);
    check_bias(p);
    const long long lr = static_cast<long long>(ell) * r;
    if (lr + r - 1 > n) return T(0);  // no room for r separated runs
    T q = T(1) - p;
    if constexpr (is_rational_v<T>) {
        return pow_int(p, lr) * pow_int(q, r - 1) *
               (binom_as<T>(n + 1 - lr, r) - p * binom_as<T>(n - lr, r));
    } else {
        long double pl = static_cast<long double>(p);
        long double ql = 1.0L - pl;
        long double bracket = binom_ld(n + 1 - lr, r) - pl * binom_ld(n - lr, r);
        long double v = bracket * std::pow(pl, static_cast<long double>(lr)) *
                        std::pow(ql, static_cast<long double>(r - 1));
        return static_cast<T>(v);
    }
}

// E R_ell(n); 0 by convention for ell > n, p^n for ell = n.
template <class T>
T mean_r(long long n, int ell, const T& p) {
    if (ell < 1) throw std::invalid_argument("mean_r: ell must be >= 1");
    check_bias(p);
    if (ell > n) return T(0);
    if (ell == n) return pow_int(p, n);
    T q = T(1) - p;
    T m = T(n - ell);
    return pow_int(p, ell) * (m + T(1) - T(2) * m * p + (m - T(1)) * p * p);
}

namespace detail {

inline long double binom_moment_g_ld(long long n, int ell, long long r, long double p) {
    if (r == 0) return 1.0L;
    const long long lr = static_cast<long long>(ell) * r;
    if (lr + r - 1 > n) return 0.0L;
    long double q = 1.0L - p;
    long double bracket = binom_ld(n + 1 - lr, r) - p * binom_ld(n - lr, r);
    return bracket * std::pow(p, static_cast<long double>(lr)) *
           std::pow(q, static_cast<long double>(r - 1));
}

// P(G_ell(n) = x) by alternating binomial-moment inversion; exact when T
// is Rational. Terms vanish once l r + r - 1 > n, i.e. for r > (n+1)/(l+1).
template <class T>
T pmf_g_sum(long long n, int ell, long long x, const T& p) {
    const long long rmax = (n + 1) / (ell + 1);
    T total(0);
    for (long long r = x; r <= rmax; ++r) {
        T term = binom_as<T>(r, x) * binom_moment_g(n, ell, static_cast<int>(r), p);
        total += ((r - x) % 2 == 0) ? term : -term;
    }
    return total;
}

}  // namespace detail

template <class T>
T pmf_g(long long n, int ell, long long x, const T& p) {
    if (x < 0) throw std::invalid_argument("pmf_g: x must be >= 0");
    if (ell < 1) throw std::invalid_argument("pmf_g: ell must be >= 1");
    check_bias(p);
    return detail::pmf_g_sum(n, ell, x, p);
}

// Float-mode pmf with the cancellation monitor: long double accumulation,
// automatic exact recomputation when max|term|/|result| exceeds the limit.
Monitored pmf_g_monitored(long long n, int ell, long long x, double p);

inline double pmf_g(long long n, int ell, long long x, double p) {
    return pmf_g_monitored(n, ell, x, p).value;
}

// Finite sum H_ell(x, y; z) = sum_m z^m C(x+m, x) C(x+y-l m, x+m); terms
// vanish once x+y-l m < x+m, so m runs while (l+1) m <= y.
template <class T>
T hyper_h(int ell, long long x, long long y, const T& z) {
    if (ell < 1) throw std::invalid_argument("hyper_h: ell must be >= 1");
    if (x < 0) throw std::invalid_argument("hyper_h: x must be >= 0");
    T total(0);
    T zpow(1);
    for (long long m = 0; static_cast<long long>(ell + 1) * m <= y; ++m) {
        total += zpow * binom_as<T>(x + m, x) * binom_as<T>(x + y - ell * m, x + m);
        zpow *= z;
    }
    return total;
}

// P(G_ell(n) = x) through H_ell:
//   p^{lx} q^{x-1} [ H_ell(x, n+1-(l+1)x; -p^l q) - p H_ell(x, n-(l+1)x; -p^l q) ].
// The factor p on the second term follows from the binomial-moment
// expansion; dropping it fails already at (n, ell, x) = (3, 2, 1).
template <class T>
T pmf_g_via_hyper(long long n, int ell, long long x, const T& p) {
    if (x < 0) throw std::invalid_argument("pmf_g_via_hyper: x must be >= 0");
    if (ell < 1) throw std::invalid_argument("pmf_g_via_hyper: ell must be >= 1");
    check_bias(p);
    T q = T(1) - p;
    T z = -pow_int(p, ell) * q;
    T h1 = hyper_h(ell, x, n + 1 - static_cast<long long>(ell + 1) * x, z);
    T h2 = hyper_h(ell, x, n - static_cast<long long>(ell + 1) * x, z);
    T qpow = x >= 1 ? pow_int(q, x - 1) : T(1) / q;
    return pow_int(p, static_cast<long long>(ell) * x) * qpow * (h1 - p * h2);
}

// Exact joint binomial moment E prod_j C(R_{ell_j}(n), r_j) for distinct
// ell_j, r_0 = sum r_j >= 1:
//   (q^{-1} / prod r_j!) sum_{s=0}^{r0+1} (-p)^s C(r0+1, s) (n+1-l.r-s)_{r0}
//   * prod_j (p^{ell_j} q)^{r_j},
// with the falling factorial (N)_r taken as r! C(N, r) (zero when N < r).
template <class T>
T joint_binom_moment_r(long long n, const std::vector<int>& ells, const std::vector<int>& rs,
                       const T& p) {
    if (ells.size() != rs.size() || ells.empty())
        throw std::invalid_argument("joint_binom_moment_r: ell/r size mismatch");
    check_bias(p);
    std::set<int> seen;
    long long r0 = 0, lr = 0;
    for (std::size_t i = 0; i < ells.size(); ++i) {
        if (ells[i] < 1) throw std::invalid_argument("joint_binom_moment_r: ell must be >= 1");
        if (rs[i] < 0) throw std::invalid_argument("joint_binom_moment_r: r must be >= 0");
        if (!seen.insert(ells[i]).second)
            throw std::invalid_argument("joint_binom_moment_r: ell values must be distinct");
        r0 += rs[i];
        lr += static_cast<long long>(ells[i]) * rs[i];
    }
    if (r0 < 1) throw std::invalid_argument("joint_binom_moment_r: need sum of r >= 1");
    T q = T(1) - p;
    T s_sum(0);
    for (long long s = 0; s <= r0 + 1; ++s) {
        T term = binom_as<T>(r0 + 1, s) * falling_factorial_as<T>(n + 1 - lr - s, r0) *
                 pow_int(p, s);
        s_sum += (s % 2 == 0) ? term : -term;
    }
    T prefactor = T(1) / q;
    for (std::size_t i = 0; i < ells.size(); ++i)
        prefactor *= pow_int(pow_int(p, ells[i]) * q, rs[i]) / factorial_as<T>(rs[i]);
    return prefactor * s_sum;
}

}  // namespace coinruns::moments

#endif
