#include "coinruns/longest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace coinruns::longest {

namespace {

long double f_poly_ld(int ell, long double p, long double w) {
    long double q = 1.0L - p;
    return 1.0L - w + std::pow(p, ell) * q * std::pow(w, ell + 1);
}

// Rolling-window evaluation of both recursions at once.
struct ExactPair {
    long double f;     // P(L(n) < ell)
    long double tail;  // P(L(n) >= ell)
};

ExactPair exact_pair(long long n, int ell, double p) {
    if (ell < 1) throw std::invalid_argument("f_exact: ell must be >= 1");
    if (n < 0) throw std::invalid_argument("f_exact: n must be >= 0");
    check_bias(p);
    if (n < ell) return {1.0L, 0.0L};
    const long double pl = p;
    const long double q = 1.0L - pl;
    std::vector<long double> coef(static_cast<std::size_t>(ell));
    coef[0] = q;
    for (int i = 1; i < ell; ++i) coef[i] = coef[i - 1] * pl;
    const long double pell = coef[ell - 1] * pl / q;  // p^ell
    // circular windows over the last ell values
    std::vector<long double> fwin(static_cast<std::size_t>(ell), 1.0L);
    std::vector<long double> twin(static_cast<std::size_t>(ell), 0.0L);
    long double f = 1.0L, t = 0.0L;
    for (long long m = ell; m <= n; ++m) {
        f = 0.0L;
        t = pell;
        for (int i = 1; i <= ell; ++i) {
            const std::size_t k = static_cast<std::size_t>((m - i) % ell);
            f += coef[i - 1] * fwin[k];
            t += coef[i - 1] * twin[k];
        }
        const std::size_t k = static_cast<std::size_t>(m % ell);
        fwin[k] = f;
        twin[k] = t;
    }
    return {f, t};
}

}  // namespace

double f_poly(int ell, double p, double w) {
    return static_cast<double>(f_poly_ld(ell, p, w));
}

double f_exact(long long n, int ell, double p) {
    return static_cast<double>(exact_pair(n, ell, p).f);
}

double tail_exact(long long n, int ell, double p) {
    return static_cast<double>(exact_pair(n, ell, p).tail);
}

Rational f_exact(long long n, int ell, const Rational& p) {
    return detail::f_exact_sweep(n, ell, p).back();
}

moments::Monitored f_series_monitored(long long n, int ell, double p) {
    if (ell < 1) throw std::invalid_argument("f_series: ell must be >= 1");
    if (n < 0) throw std::invalid_argument("f_series: n must be >= 0");
    check_bias(p);
    const long double pl = p, q = 1.0L - pl;
    const long long rmax = (n + 1) / (ell + 1);
    long double total = 1.0L, max_term = 1.0L;
    for (long long r = 1; r <= rmax; ++r) {
        const long long a = n - static_cast<long long>(ell) * r;
        long double term = std::pow(pl, static_cast<long double>(ell) * r) *
                           (binom_ld(a, r) * std::pow(q, static_cast<long double>(r)) +
                            binom_ld(a, r - 1) * std::pow(q, static_cast<long double>(r - 1)));
        max_term = std::max(max_term, std::fabs(term));
        total += (r % 2 == 0) ? term : -term;
    }
    moments::Monitored out;
    out.cancellation =
        static_cast<double>(max_term / std::max(std::fabs(total), 1e-300L));
    if (!std::isfinite(static_cast<double>(total)) ||
        out.cancellation > moments::kCancellationLimit) {
        out.used_rational = true;
        out.value = to_double(f_series(n, ell, Rational(p)));
    } else {
        out.value = static_cast<double>(total);
    }
    return out;
}

double f_series(long long n, int ell, double p) { return f_series_monitored(n, ell, p).value; }

Rational f_series(long long n, int ell, const Rational& p) {
    if (ell < 1) throw std::invalid_argument("f_series: ell must be >= 1");
    if (n < 0) throw std::invalid_argument("f_series: n must be >= 0");
    check_bias(p);
    const Rational q = Rational(1) - p;
    const long long rmax = (n + 1) / (ell + 1);
    Rational total(1);
    for (long long r = 1; r <= rmax; ++r) {
        const long long a = n - static_cast<long long>(ell) * r;
        Rational term = pow_int(p, static_cast<long long>(ell) * r) *
                        (Rational(binom_big(a, r)) * pow_int(q, r) +
                         Rational(binom_big(a, r - 1)) * pow_int(q, r - 1));
        total += (r % 2 == 0) ? term : -term;
    }
    return total;
}

ApproxReport poisson_approx(long long n, int ell, double p) {
    if (ell < 1) throw std::invalid_argument("poisson_approx: ell must be >= 1");
    if (ell > n) throw std::invalid_argument("poisson_approx: requires ell <= n");
    check_bias(p);
    const double pell = std::pow(p, ell);
    ApproxReport rep;
    rep.method = "poisson";
    rep.n = n;
    rep.ell = ell;
    rep.p = p;
    rep.value = std::exp(-(static_cast<double>(n - ell)) * pell * (1.0 - p) - pell);
    return rep;
}

namespace {

struct RootKey {
    int ell;
    std::uint64_t pbits;
    bool operator==(const RootKey&) const = default;
};

struct RootKeyHash {
    std::size_t operator()(const RootKey& k) const {
        return std::hash<std::uint64_t>()(k.pbits * 1000003ull + static_cast<std::uint64_t>(k.ell));
    }
};

std::shared_mutex g_root_cache_mutex;
std::unordered_map<RootKey, RootInfo, RootKeyHash> g_root_cache;

RootInfo compute_root(int ell, double p) {
    const double q = 1.0 - p;
    const double pc = static_cast<double>(ell) / (ell + 1);
    RootInfo info;
    info.ell = ell;
    info.p = p;
    if (std::fabs(p - pc) < 1e-14) {
        info.degenerate = true;
        info.w0 = 1.0 / p;
        info.bracket_lo = info.bracket_hi = info.w0;
        info.residual = std::fabs(f_poly(ell, p, info.w0));
        return info;
    }
    double lo, hi;
    if (p < pc) {
        lo = 1.0;
        hi = static_cast<double>(ell + 1) / ell;  // f(1) > 0, f((ell+1)/ell) < 0
    } else {
        // critical point w*: the global minimum of f on [0, inf), f(w*) < 0
        lo = 1.0 / (p * std::pow((ell + 1) * q, 1.0 / ell));
        hi = lo;
        while (f_poly(ell, p, hi) <= 0.0) hi *= 2.0;
    }
    info.bracket_lo = lo;
    info.bracket_hi = hi;
    double flo = f_poly(ell, p, lo);
    double fhi = f_poly(ell, p, hi);
    if (!((flo > 0.0) != (fhi > 0.0)))
        throw std::runtime_error("root_w0: bracket does not straddle a sign change (ell=" +
                                 std::to_string(ell) + ", p=" + std::to_string(p) + ")");
    for (int it = 0; it < 200 && hi - lo > 1e-15 * lo; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f_poly(ell, p, mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    info.w0 = 0.5 * (lo + hi);
    info.residual = std::fabs(f_poly(ell, p, info.w0));
    return info;
}

}  // namespace

RootInfo root_w0(int ell, double p) {
    if (ell < 1) throw std::invalid_argument("root_w0: ell must be >= 1");
    check_bias(p);
    const RootKey key{ell, std::bit_cast<std::uint64_t>(p)};
    {
        std::shared_lock lock(g_root_cache_mutex);
        auto it = g_root_cache.find(key);
        if (it != g_root_cache.end()) return it->second;
    }
    RootInfo info = compute_root(ell, p);
    std::unique_lock lock(g_root_cache_mutex);
    return g_root_cache.emplace(key, info).first->second;
}

ApproxReport second_approx(long long n, int ell, double p) {
    if (n < 0) throw std::invalid_argument("second_approx: n must be >= 0");
    const RootInfo root = root_w0(ell, p);
    const double q = 1.0 - p;
    ApproxReport rep;
    rep.method = "dominant-root";
    rep.n = n;
    rep.ell = ell;
    rep.p = p;
    rep.w0 = root.w0;
    double value;
    if (root.degenerate) {
        rep.c0 = 2.0 * ell / (ell + 1);
        value = 2.0 * std::pow(static_cast<double>(ell) / (ell + 1), static_cast<double>(n) + 1);
    } else {
        const double x = std::pow(root.w0 * p, ell);
        const double ratio = (1.0 - x) / (1.0 - (ell + 1) * q * x);
        rep.c0 = ratio / root.w0;
        value = ratio * std::pow(root.w0, -static_cast<double>(n) - 1);
    }
    if (value < 0.0 || value > 1.0) {
        rep.clamped = true;
        value = std::clamp(value, 0.0, 1.0);
    }
    rep.value = value;
    return rep;
}

std::vector<std::complex<double>> all_roots(int ell, double p) {
    if (ell < 1 || ell > 30)
        throw std::invalid_argument("all_roots: requires 1 <= ell <= 30 (conditioning guard)");
    check_bias(p);
    const int deg = ell + 1;
    const double q = 1.0 - p;
    const double inv_lead = 1.0 / (std::pow(p, ell) * q);
    // monic coefficients c[k] of w^k: w^{ell+1} - w/A + 1/A with A = p^ell q
    std::vector<double> c(static_cast<std::size_t>(deg) + 1, 0.0);
    c[0] = inv_lead;
    c[1] = -inv_lead;
    c[static_cast<std::size_t>(deg)] = 1.0;
    auto eval = [&](std::complex<double> z) {
        std::complex<double> r = 0.0;
        for (int k = deg; k >= 0; --k) r = r * z + c[static_cast<std::size_t>(k)];
        return r;
    };
    // initial guesses on a circle of radius (product of root moduli)^{1/deg}
    const double radius = std::pow(inv_lead, 1.0 / deg);
    std::vector<std::complex<double>> z(static_cast<std::size_t>(deg));
    for (int k = 0; k < deg; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / deg + 0.37;
        z[static_cast<std::size_t>(k)] = std::polar(radius, angle);
    }
    bool converged = false;
    for (int iter = 0; iter < 2000 && !converged; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < deg; ++i) {
            std::complex<double> denom = 1.0;
            for (int j = 0; j < deg; ++j)
                if (j != i) denom *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
            const std::complex<double> step = eval(z[static_cast<std::size_t>(i)]) / denom;
            z[static_cast<std::size_t>(i)] -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[static_cast<std::size_t>(i)])));
        }
        converged = worst < 1e-13;
    }
    if (!converged) throw std::runtime_error("all_roots: simultaneous iteration did not converge");
    std::sort(z.begin(), z.end(), [](const auto& a, const auto& b) {
        return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a.real() < b.real();
    });
    return z;
}

ThresholdResult threshold_probe(long long n, double a, double b, double p) {
    if (n < 2) throw std::invalid_argument("threshold_probe: n must be >= 2");
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("threshold_probe: need a, b > 0");
    check_bias(p);
    const double log_inv_p = -std::log(p);
    ThresholdResult out;
    const double raw = (a * std::log(static_cast<double>(n)) + std::log(b)) / log_inv_p;
    long long ell = static_cast<long long>(std::ceil(raw));
    if (ell < 1) {
        ell = 1;
        out.clamped = true;
    }
    out.ell = static_cast<int>(ell);
    out.value = f_exact(n, out.ell, p);
    return out;
}

}  // namespace coinruns::longest
