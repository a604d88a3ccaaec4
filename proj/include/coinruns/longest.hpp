#ifndef COINRUNS_LONGEST_HPP
#define COINRUNS_LONGEST_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "coinruns/binomials.hpp"
#include "coinruns/moments.hpp"
#include "coinruns/params.hpp"

namespace coinruns::longest {

// Dominant real root w0 of f(w) = 1 - w + p^ell q w^{ell+1} (the real root
// other than 1/p), with the certified bracket it was isolated in.
struct RootInfo {
    double w0 = 0.0;
    int ell = 0;
    double p = 0.0;
    bool degenerate = false;  // p == ell/(ell+1), where w0 = 1/p exactly
    double residual = 0.0;    // |f(w0)|
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

// An approximate value of P(L(n) < ell) plus diagnostics.
struct ApproxReport {
    double value = 0.0;
    std::string method;
    long long n = 0;
    int ell = 0;
    double p = 0.0;
    std::optional<double> w0;
    std::optional<double> c0;
    bool clamped = false;  // asymptotic formula left [0,1] and was clamped
};

// f(w) = 1 - w + p^ell q w^{ell+1}, evaluated in extended precision.
double f_poly(int ell, double p, double w);

// P(L(n) < ell) by the renewal recursion
//   F(m) = q F(m-1) + q p F(m-2) + ... + q p^{ell-1} F(m-ell),
// F(m) = 1 for m < ell; rolling window, extended-precision accumulation.
double f_exact(long long n, int ell, double p);

// P(L(n) >= ell) by the complementary recursion (same kernel, constant
// term p^ell); keeps full relative precision when the tail is tiny.
double tail_exact(long long n, int ell, double p);

// Exact-rational mirror of f_exact.
Rational f_exact(long long n, int ell, const Rational& p);

// P(L(n) < ell) by the alternating binomial-moment series
//   1 + sum_{r>=1} (-1)^r p^{lr} [ C(n-lr, r) q^r + C(n-lr, r-1) q^{r-1} ].
// Independent of the recursion route; carries the cancellation monitor.
moments::Monitored f_series_monitored(long long n, int ell, double p);
double f_series(long long n, int ell, double p);
Rational f_series(long long n, int ell, const Rational& p);

// exp(-E G_ell(n)) = exp(-(n-ell) p^ell q - p^ell); requires ell <= n.
ApproxReport poisson_approx(long long n, int ell, double p);

// Bisection on the bracket certified by the root-location analysis:
// p < ell/(ell+1): w0 in (1, (ell+1)/ell);  p > ell/(ell+1): w0 > w* with
// w* = 1/(p ((ell+1)q)^{1/ell});  p = ell/(ell+1): w0 = 1/p exactly.
// Results are cached per (ell, p); correctness does not depend on hits.
RootInfo root_w0(int ell, double p);

// Dominant-root approximation of P(L(n) < ell):
//   [ (1-(w0 p)^ell) / (1-(ell+1) q (w0 p)^ell) ] * w0^{-n-1},
// or 2 (ell/(ell+1))^{n+1} in the degenerate case p = ell/(ell+1).
ApproxReport second_approx(long long n, int ell, double p);

// All ell+1 complex roots of f (simultaneous-iteration solver); used to
// verify that every root besides w0 and 1/p has modulus > max(w0, 1/p).
std::vector<std::complex<double>> all_roots(int ell, double p);

struct ThresholdResult {
    double value = 0.0;
    int ell = 0;
    bool clamped = false;  // threshold fell below 1 and was clamped
};

// F evaluated at ell = ceil(a log_{1/p} n + log_{1/p} b); probes the cutoff
// regimes (limit e^{-q/b} at a = 1, 1 for a > 1, 0 for a < 1).
ThresholdResult threshold_probe(long long n, double a, double b, double p);

namespace detail {

template <class T>
std::vector<T> f_exact_sweep(long long n, int ell, const T& p) {
    if (ell < 1) throw std::invalid_argument("f_exact: ell must be >= 1");
    if (n < 0) throw std::invalid_argument("f_exact: n must be >= 0");
    check_bias(p);
    std::vector<T> f(static_cast<std::size_t>(n) + 1, T(1));
    if (n < ell) return f;
    const T q = T(1) - p;
    std::vector<T> coef(static_cast<std::size_t>(ell));
    coef[0] = q;
    for (int i = 1; i < ell; ++i) coef[i] = coef[i - 1] * p;
    for (long long m = ell; m <= n; ++m) {
        T s(0);
        for (int i = 1; i <= ell; ++i) s += coef[i - 1] * f[m - i];
        f[m] = s;
    }
    return f;
}

}  // namespace detail

}  // namespace coinruns::longest

#endif
