#include <doctest.h>

#include <cmath>

#include "coinruns/longest.hpp"

using namespace coinruns;
using namespace coinruns::longest;

namespace {
Rational rat(long long a, long long b) { return Rational(a) / b; }
}  // namespace

TEST_CASE("exact distribution function of the longest run") {
    // ell = 1: all-tails probability q^n
    for (double p : {0.3, 0.5, 0.8})
        for (int n : {0, 1, 5, 30})
            CHECK(f_exact(n, 1, p) == doctest::Approx(std::pow(1.0 - p, n)).epsilon(1e-13));
    for (int n = 0; n < 4; ++n) CHECK(f_exact(n, 4, 0.5) == 1.0);

    CHECK(1.0 - f_exact(5, 2, 0.5) == doctest::Approx(0.59375).epsilon(1e-14));
    CHECK(f_exact(5, 2, rat(1, 2)) == rat(13, 32));

    // reference values at n = 10^4, p = 1/2
    CHECK(tail_exact(10000, 10, 0.5) ==
          doctest::Approx(0.992583894386551).epsilon(1e-13));
    CHECK(std::fabs(tail_exact(10000, 50, 0.5) - 4.41957581641815e-12) < 1e-24);

    CHECK_THROWS_AS(f_exact(5, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(f_exact(-1, 2, 0.5), std::invalid_argument);
}

TEST_CASE("complement consistency and monotonicity") {
    for (double p : {1.0 / 3, 0.5, 0.8})
        for (int ell : {1, 2, 5, 9}) {
            double prev = 1.0;
            for (int n = 0; n <= 80; ++n) {
                const double f = f_exact(n, ell, p);
                CHECK(f >= -1e-15);
                CHECK(f <= 1.0 + 1e-15);
                CHECK(f <= prev + 1e-14);  // non-increasing in n
                CHECK(f + tail_exact(n, ell, p) == doctest::Approx(1.0).epsilon(1e-13));
                prev = f;
            }
        }
    // non-decreasing in ell
    for (int ell = 1; ell <= 12; ++ell)
        CHECK(f_exact(40, ell, 0.6) <= f_exact(40, ell + 1, 0.6) + 1e-14);
}

TEST_CASE("series route agrees with the recursion") {
    for (double p : {1.0 / 3, 0.5, 0.8})
        for (int ell : {1, 2, 3, 7, 12})
            for (int n : {0, 1, 6, 30, 77, 120})
                CHECK(std::fabs(f_series(n, ell, p) - f_exact(n, ell, p)) <= 1e-11);
    // exact equality in rational mode
    for (int ell : {1, 2, 5})
        for (int n : {0, 9, 41}) {
            auto sweep = detail::f_exact_sweep(n, ell, rat(2, 3));
            CHECK(f_series(n, ell, rat(2, 3)) == sweep[static_cast<std::size_t>(n)]);
        }
    // catastrophic cancellation switches to the exact path
    auto mon = f_series_monitored(300, 1, 0.5);
    CHECK(mon.used_rational);
    CHECK(mon.value == doctest::Approx(std::pow(0.5, 300)).epsilon(1e-12));
    auto benign = f_series_monitored(30, 3, 0.5);
    CHECK(!benign.used_rational);
}

TEST_CASE("poisson approximation") {
    auto rep = poisson_approx(10000, 10, 0.5);
    CHECK(1.0 - rep.value == doctest::Approx(0.992394672192560).epsilon(1e-13));
    CHECK(1.0 - poisson_approx(10000, 20, 0.5).value ==
          doctest::Approx(0.004748478671106).epsilon(1e-10));
    // exponent ties to the first binomial moment of G_ell(n)
    for (double p : {0.3, 0.6})
        for (int ell : {2, 5})
            for (long long n : {10LL, 100LL})
                CHECK(-std::log(poisson_approx(n, ell, p).value) ==
                      doctest::Approx(moments::binom_moment_g(n, ell, 1, p)).epsilon(1e-12));
    CHECK_THROWS_AS(poisson_approx(3, 4, 0.5), std::invalid_argument);
    // vanishing error along n p^ell q = theta (the regime the formula targets)
    double prev = 1.0;
    for (int k = 3; k <= 7; ++k) {
        const long long n = 1LL << (k + 2);  // theta = n p^ell q = 2 at ell = k+1
        const int ell = k + 1;
        const double gap = std::fabs(poisson_approx(n, ell, 0.5).value - f_exact(n, ell, 0.5));
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("dominant root") {
    // closed form at ell = 2: w0 = (sqrt(1+4p/q)-1)/(2p)
    for (double p : {0.2, 0.5, 0.55}) {
        const double w0 = (std::sqrt(1.0 + 4.0 * p / (1.0 - p)) - 1.0) / (2.0 * p);
        auto info = root_w0(2, p);
        CHECK(!info.degenerate);
        CHECK(info.w0 == doctest::Approx(w0).epsilon(1e-14));
    }
    CHECK(root_w0(2, 0.5).w0 == doctest::Approx(std::sqrt(5.0) - 1.0).epsilon(1e-15));

    // degenerate p = ell/(ell+1): w0 = 1/p exactly
    for (int ell : {1, 2, 3, 9}) {
        auto info = root_w0(ell, static_cast<double>(ell) / (ell + 1));
        CHECK(info.degenerate);
        CHECK(info.w0 == (ell + 1.0) / ell);
    }

    // w0(ell) decreases to 1 at fixed p
    double prev = 10.0;
    for (int ell = 2; ell <= 40; ++ell) {
        const double w0 = root_w0(ell, 0.5).w0;
        CHECK(w0 > 1.0);
        CHECK(w0 < prev);
        prev = w0;
    }
    CHECK(prev - 1.0 < 1e-11);

    // residuals, bracket-position facts, and both branch orderings
    for (int ell = 1; ell <= 15; ++ell)
        for (double p : {1.0 / 3, 0.5, 2.0 / 3, 0.8, 0.95}) {
            auto info = root_w0(ell, p);
            CHECK(info.residual <= 1e-14 * std::max(1.0, std::pow(info.w0, ell + 1)));
            CHECK(f_poly(ell, p, 1.0) == doctest::Approx(std::pow(p, ell) * (1 - p)));
            const double edge = static_cast<double>(ell + 1) / ell;
            if (!info.degenerate) {
                CHECK(f_poly(ell, p, edge) < 0.0);
                if (p < static_cast<double>(ell) / (ell + 1)) {
                    CHECK(info.w0 > 1.0);
                    CHECK(info.w0 < edge);
                } else {
                    CHECK(info.w0 > 1.0 / (p * std::pow((ell + 1) * (1 - p), 1.0 / ell)));
                    CHECK(info.w0 > 1.0 / p);
                }
            }
        }
}

TEST_CASE("dominant-root approximation") {
    // frozen high-precision values of the formula itself
    CHECK(1.0 - second_approx(5, 2, 0.5).value ==
          doctest::Approx(0.59423133953908156).epsilon(1e-10));
    CHECK(1.0 - second_approx(5, 2, 0.8).value ==
          doctest::Approx(0.94383720429592489).epsilon(1e-10));
    CHECK(1.0 - second_approx(3000, 10, 2.0 / 3).value ==
          doctest::Approx(0.99999999035067400).epsilon(1e-12));

    // report plumbing
    auto rep = second_approx(20, 2, 0.5);
    CHECK(rep.method == "dominant-root");
    CHECK(rep.w0.has_value());
    CHECK(*rep.c0 == doctest::Approx((1 - std::pow(*rep.w0 * 0.5, 2)) /
                                     (1 - 3 * 0.5 * std::pow(*rep.w0 * 0.5, 2)) / *rep.w0));

    // relative error against the exact value shrinks with n
    double prev = 1e9;
    for (int n : {5, 10, 20, 40}) {
        const double exact = f_exact(n, 2, 0.5);
        const double gap = std::fabs(second_approx(n, 2, 0.5).value - exact) / exact;
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-6);

    // degenerate case: 2 (ell/(ell+1))^{n+1}
    for (int n : {4, 9}) {
        auto deg = second_approx(n, 2, 2.0 / 3);
        CHECK(deg.value == doctest::Approx(2.0 * std::pow(2.0 / 3, n + 1)).epsilon(1e-14));
    }
    CHECK(std::fabs(second_approx(40, 2, 2.0 / 3).value - f_exact(40, 2, 2.0 / 3)) /
              f_exact(40, 2, 2.0 / 3) <
          1e-4);

    // tiny n can push the asymptotic formula above 1; it is clamped and flagged
    auto clamped = second_approx(0, 2, 0.8);
    CHECK(clamped.clamped);
    CHECK(clamped.value == 1.0);
}

TEST_CASE("all roots of the denominator polynomial") {
    auto roots = all_roots(2, 0.5);
    REQUIRE(roots.size() == 3);
    // factorization (pw-1)(pq w^2 + qw - 1): roots 2, sqrt(5)-1, -(sqrt(5)+1)
    CHECK(std::abs(roots[0] - std::complex<double>(std::sqrt(5.0) - 1.0, 0.0)) < 1e-8);
    CHECK(std::abs(roots[1] - std::complex<double>(2.0, 0.0)) < 1e-8);
    CHECK(std::abs(roots[2] - std::complex<double>(-std::sqrt(5.0) - 1.0, 0.0)) < 1e-8);

    for (int ell : {2, 5, 9})
        for (double p : {0.3, 0.5, 0.8}) {
            auto rts = all_roots(ell, p);
            REQUIRE(static_cast<int>(rts.size()) == ell + 1);
            // Vieta: product of roots is (-1)^{ell+1} / (p^ell q)
            std::complex<double> prod = 1.0;
            for (auto r : rts) prod *= r;
            const double expected = ((ell + 1) % 2 == 0 ? 1.0 : -1.0) /
                                    (std::pow(p, ell) * (1.0 - p));
            CHECK(prod.real() == doctest::Approx(expected).epsilon(1e-8));
            CHECK(std::fabs(prod.imag()) < 1e-6 * std::fabs(expected));
            // every root besides w0 and 1/p lies strictly outside max(w0, 1/p)
            const double w0 = root_w0(ell, p).w0;
            const double radius = std::max(w0, 1.0 / p);
            int matched = 0;
            for (auto r : rts) {
                if (std::abs(r - std::complex<double>(w0, 0.0)) < 1e-8 ||
                    std::abs(r - std::complex<double>(1.0 / p, 0.0)) < 1e-8) {
                    ++matched;
                    continue;
                }
                CHECK(std::abs(r) > radius + 1e-9);
            }
            CHECK(matched == 2);
        }
    CHECK_THROWS_AS(all_roots(31, 0.5), std::invalid_argument);
}

TEST_CASE("threshold probe") {
    auto high = threshold_probe(1000000, 2.0, 1.0, 0.5);
    CHECK(high.ell == 40);
    CHECK(high.value > 0.999);
    auto low = threshold_probe(1000000, 0.5, 1.0, 0.5);
    CHECK(low.value < 0.001);
    auto crit = threshold_probe(1000000, 1.0, 1.0, 0.5);
    CHECK(std::fabs(crit.value - std::exp(-0.5)) < 0.05);
    auto clamped = threshold_probe(2, 0.01, 1e-6, 0.5);
    CHECK(clamped.clamped);
    CHECK(clamped.ell == 1);
    CHECK_THROWS_AS(threshold_probe(1, 1.0, 1.0, 0.5), std::invalid_argument);
}
