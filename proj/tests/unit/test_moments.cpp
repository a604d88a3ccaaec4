#include <doctest.h>

#include <cmath>

#include "coinruns/moments.hpp"
#include "coinruns/run_distribution.hpp"

using namespace coinruns;
using namespace coinruns::moments;

namespace {
Rational rat(long long a, long long b) { return Rational(a) / b; }
}  // namespace

TEST_CASE("binomial coefficient conventions") {
    CHECK(binom_d(5, 2) == 10.0);
    CHECK(binom_d(5, 0) == 1.0);
    CHECK(binom_d(5, 6) == 0.0);
    CHECK(binom_d(-1, 0) == 0.0);
    CHECK(binom_d(-3, 2) == 0.0);
    CHECK(binom_d(4, -1) == 0.0);
    CHECK(binom_big(-1, 0) == 0);
    CHECK(binom_big(200, 100) == Rational(binom_big(199, 99)) * 200 / 100);
    CHECK(falling_factorial_as<double>(5, 2) == 20.0);
    CHECK(falling_factorial_as<double>(1, 2) == 0.0);
    CHECK(falling_factorial_as<double>(-2, 2) == 0.0);  // zero below the support
    // large arguments go through without overflow
    CHECK(std::isfinite(binom_d(9950, 196)) == false);  // ~1e420 saturates double
    CHECK(binom_ld(9950, 196) > 1e400L);
}

TEST_CASE("binomial moments of the exceedance count") {
    // r = 1 is the mean: E G_ell(n) = p^ell [(n-ell+1) - p(n-ell)]
    for (double p : {0.3, 0.5, 0.8})
        for (int ell : {1, 2, 5})
            for (long long n : {5LL, 12LL, 40LL}) {
                const double expected =
                    std::pow(p, ell) * ((n - ell + 1) - p * (n - ell));
                CHECK(binom_moment_g(n, ell, 1, p) == doctest::Approx(expected).epsilon(1e-13));
            }
    // enumeration of {HH, HT, TH, TT}: E(#runs >= 1) = 3/4
    CHECK(binom_moment_g(2, 1, 1, 0.5) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(binom_moment_g(2, 1, 1, rat(1, 2)) == rat(3, 4));
    // no room for r separated runs (2*2 + 2 - 1 = 5 > 4)
    CHECK(binom_moment_g(4, 2, 2, 0.5) == 0.0);
    CHECK(binom_moment_g(10, 3, 0, 0.5) == 1.0);
}

TEST_CASE("mean run count of a given length") {
    CHECK(mean_r(3, 2, 0.5) == doctest::Approx(0.25).epsilon(1e-15));  // HHT, THH
    CHECK(mean_r(3, 2, rat(1, 2)) == rat(1, 4));
    for (double p : {0.25, 0.6})
        for (int n : {4, 9}) CHECK(mean_r(n, n, p) == doctest::Approx(std::pow(p, n)));
    CHECK(mean_r(3, 7, 0.5) == 0.0);
    // ergodic limit: E R_ell(n)/n -> p^ell q^2
    const double p = 0.4;
    CHECK(mean_r(200000, 3, p) / 200000 ==
          doctest::Approx(std::pow(p, 3) * 0.36).epsilon(1e-4));
    // R_ell(n) = G_ell(n) - G_{ell+1}(n) at the level of means
    for (int ell : {1, 2, 4})
        for (long long n : {6LL, 15LL})
            CHECK(mean_r(n, ell, p) ==
                  doctest::Approx(binom_moment_g(n, ell, 1, p) -
                                  binom_moment_g(n, ell + 1, 1, p))
                      .epsilon(1e-13));
}

TEST_CASE("pmf of the exceedance count") {
    CHECK(pmf_g(3, 2, 1, 0.5) == doctest::Approx(3.0 / 8).epsilon(1e-15));  // HHT, THH, HHH
    CHECK(pmf_g(3, 2, 1, rat(1, 2)) == rat(3, 8));

    for (double p : {0.3, 0.5, 0.8})
        for (int ell : {1, 2, 3})
            for (long long n : {0LL, 1LL, 7LL, 25LL}) {
                double total = 0.0, meang = 0.0;
                for (long long x = 0; x <= (n + 1) / (ell + 1); ++x) {
                    const double v = pmf_g(n, ell, x, p);
                    CHECK(v >= -1e-13);
                    CHECK(v <= 1.0 + 1e-13);
                    total += v;
                    meang += static_cast<double>(x) * v;
                }
                CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
                if (n >= ell)
                    CHECK(meang ==
                          doctest::Approx(binom_moment_g(n, ell, 1, p)).epsilon(1e-11));
            }

    // binomial-moment inversion round trip, exact in rational arithmetic
    const Rational pq = rat(2, 3);
    for (int ell : {1, 2})
        for (long long n : {5LL, 11LL})
            for (int r = 0; r <= 4; ++r) {
                Rational lhs = binom_moment_g(n, ell, r, pq);
                Rational rhs(0);
                for (long long x = 0; x <= (n + 1) / (ell + 1); ++x)
                    rhs += Rational(binom_big(x, r)) * pmf_g(n, ell, x, pq);
                CHECK(lhs == rhs);
            }
}

TEST_CASE("cancellation monitor") {
    // benign case stays in float
    auto ok = pmf_g_monitored(25, 2, 1, 0.5);
    CHECK(!ok.used_rational);
    CHECK(ok.cancellation < 1e4);
    // P(G_1(300) = 0) = q^300 ~ 5e-91: the alternating sum cancels
    // catastrophically and must be replayed exactly
    auto hard = pmf_g_monitored(300, 1, 0, 0.5);
    CHECK(hard.used_rational);
    CHECK(hard.value == doctest::Approx(std::pow(0.5, 300)).epsilon(1e-12));
}

TEST_CASE("finite hypergeometric sum") {
    // z = 0 keeps only m = 0
    CHECK(hyper_h(2, 3, 4, 0.0) == doctest::Approx(binom_d(7, 3)));
    // x = 0: sum_m z^m C(y - l m, m)
    const double z = -0.125;
    double expected = 0.0;
    for (int m = 0; 3 * m <= 7; ++m) expected += std::pow(z, m) * binom_d(7 - 2 * m, m);
    CHECK(hyper_h(2, 0, 7, z) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(hyper_h(2, 1, -1, z) == 0.0);  // negative y: empty sum

    // pmf identity against the inversion route
    CHECK(pmf_g_via_hyper(10, 2, 1, rat(1, 2)) == pmf_g(10, 2, 1, rat(1, 2)));
    CHECK(pmf_g_via_hyper(10, 2, 1, 0.5) == doctest::Approx(pmf_g(10, 2, 1, 0.5)).epsilon(1e-12));
    for (int ell : {1, 2, 4})
        for (long long n : {0LL, 3LL, 9LL, 17LL})
            for (long long x = 0; x <= (n + 1) / (ell + 1); ++x)
                CHECK(pmf_g_via_hyper(n, ell, x, rat(1, 3)) == pmf_g(n, ell, x, rat(1, 3)));
}

TEST_CASE("joint binomial moments of run counts") {
    // single pair reduces to the mean
    for (double p : {0.3, 0.5, 0.8})
        for (int ell : {1, 2, 5})
            for (long long n : {4LL, 9LL, 30LL})
                CHECK(joint_binom_moment_r(n, {ell}, {1}, p) ==
                      doctest::Approx(mean_r(n, ell, p)).epsilon(1e-12));

    // symmetric under permutation of the (ell, r) pairs
    CHECK(joint_binom_moment_r(20, {1, 3, 4}, {2, 1, 0}, 0.6) ==
          doctest::Approx(joint_binom_moment_r(20, {4, 1, 3}, {0, 2, 1}, 0.6)).epsilon(1e-13));

    // engine cross-check: E[R_1(12) R_2(12)] as a sum over the exact law
    auto dist = portmanteau::run_distribution(12, 0.5);
    double engine = 0.0;
    for (const auto& [x, w] : dist.atoms())
        engine += w * static_cast<double>(x.count(1)) * static_cast<double>(x.count(2));
    CHECK(joint_binom_moment_r(12, {1, 2}, {1, 1}, 0.5) ==
          doctest::Approx(engine).epsilon(1e-12));

    // and exactly, in rational arithmetic
    auto distq = portmanteau::run_distribution(12, rat(1, 2));
    Rational engineq(0);
    for (const auto& [x, w] : distq.atoms())
        engineq += w * Rational(x.count(1)) * Rational(x.count(2));
    CHECK(joint_binom_moment_r(12, {1, 2}, {1, 1}, rat(1, 2)) == engineq);

    // Poisson regime: along n p^l q -> theta the moment approaches
    // (q theta_1)(q theta_2)
    const double q = 0.5;
    double prev_gap = 1e9;
    for (long long n : {1000LL, 10000LL, 100000LL}) {
        const int ell = static_cast<int>(std::lround(std::log2(n * q / 2.0)));
        const double th1 = n * std::pow(0.5, ell) * q;
        const double target = (q * th1) * (q * th1 / 2.0);
        const double gap =
            std::fabs(joint_binom_moment_r(n, {ell, ell + 1}, {1, 1}, 0.5) - target) / target;
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }

    CHECK_THROWS_AS(joint_binom_moment_r(10, {2, 2}, {1, 1}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(joint_binom_moment_r(10, {1}, {0}, 0.5), std::invalid_argument);
}
