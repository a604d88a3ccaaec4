#include "coinruns/moments.hpp"

namespace coinruns::moments {

Monitored pmf_g_monitored(long long n, int ell, long long x, double p) {
    if (x < 0) throw std::invalid_argument("pmf_g: x must be >= 0");
    if (ell < 1) throw std::invalid_argument("pmf_g: ell must be >= 1");
    check_bias(p);
    const long long rmax = (n + 1) / (ell + 1);
    long double total = 0.0L, max_term = 0.0L;
    for (long long r = x; r <= rmax; ++r) {
        long double term =
            binom_ld(r, x) * detail::binom_moment_g_ld(n, ell, r, static_cast<long double>(p));
        max_term = std::max(max_term, std::fabs(term));
        total += ((r - x) % 2 == 0) ? term : -term;
    }
    Monitored out;
    out.cancellation = max_term == 0.0L
                           ? 0.0
                           : static_cast<double>(max_term / std::max(std::fabs(total), 1e-300L));
    if (!std::isfinite(static_cast<double>(total)) || out.cancellation > kCancellationLimit) {
        out.used_rational = true;
        out.value = to_double(detail::pmf_g_sum(n, ell, x, Rational(p)));
    } else {
        out.value = static_cast<double>(total);
    }
    return out;
}

}  // namespace coinruns::moments
