#include <doctest.h>

#include <cmath>

#include "coinruns/longest.hpp"
#include "coinruns/oracle.hpp"

using namespace coinruns;
using namespace coinruns::oracle;

namespace {
Rational rat(long long a, long long b) { return Rational(a) / b; }
RunVector rv(std::vector<RunVector::Entry> e) { return RunVector::from_counts(std::move(e)); }
}  // namespace

TEST_CASE("enumeration ground truth") {
    auto d3 = enumerate_distribution(3, rat(1, 2));
    REQUIRE(d3.atoms().size() == 5);
    CHECK(d3.mass(RunVector()) == rat(1, 8));
    CHECK(d3.mass(rv({{1, 1}})) == rat(3, 8));
    CHECK(d3.mass(rv({{1, 2}})) == rat(1, 8));
    CHECK(d3.mass(rv({{2, 1}})) == rat(2, 8));
    CHECK(d3.mass(rv({{3, 1}})) == rat(1, 8));
    CHECK(d3.total_mass() == Rational(1));

    auto d0 = enumerate_distribution(0, 0.5);
    REQUIRE(d0.atoms().size() == 1);
    CHECK(d0.mass(RunVector()) == 1.0);

    // P(L(5) >= 2) = 19/32
    auto d5 = enumerate_distribution(5, rat(1, 2));
    Rational tail(0);
    for (const auto& [x, w] : d5.atoms())
        if (x.longest() >= 2) tail += w;
    CHECK(tail == rat(19, 32));

    for (int n : {1, 5, 9, 12})
        CHECK(enumerate_distribution(n, 0.37).total_mass() ==
              doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(enumerate_distribution(25, 0.5), ResourceError);
}

TEST_CASE("simulation determinism across worker counts") {
    SimConfig cfg;
    cfg.n = 200;
    cfg.p = 0.5;
    cfg.trials = 20000;
    cfg.seed = 987654321;
    SimResult base;
    for (int workers : {1, 3, 8}) {
        cfg.workers = workers;
        auto res = simulate(cfg, indicator_longest_lt(7));
        if (workers == 1)
            base = res;
        else {
            CHECK(res.mean[0] == base.mean[0]);  // bit-identical
            CHECK(res.std_error[0] == base.std_error[0]);
        }
    }
    // a different seed moves the estimate
    cfg.seed = 13;
    cfg.workers = 2;
    CHECK(simulate(cfg, indicator_longest_lt(7)).mean[0] != base.mean[0]);
}

TEST_CASE("simulation hits known targets") {
    SimConfig cfg;
    cfg.seed = 20140712;
    cfg.workers = 4;

    cfg.n = 100;
    cfg.p = 0.5;
    cfg.trials = 100000;
    auto heads = simulate(cfg, head_count_functional());
    CHECK(std::fabs(heads.mean[0] - 50.0) <= 4.0 * heads.std_error[0]);
    CHECK(heads.std_error[0] == doctest::Approx(5.0 / std::sqrt(1e5)).epsilon(0.05));

    cfg.n = 3;
    auto x2 = simulate(cfg, r_count(2));
    CHECK(std::fabs(x2.mean[0] - 0.25) <= 4.0 * x2.std_error[0]);

    // biased coin exercises the threshold sampler
    cfg.n = 60;
    cfg.p = 0.3;
    cfg.trials = 200000;
    auto ind = simulate(cfg, indicator_longest_lt(4));
    const double target = longest::f_exact(60, 4, 0.3);
    CHECK(std::fabs(ind.mean[0] - target) <= 4.0 * ind.std_error[0]);

    // exceedance counter: E G_2(40) at p = 0.55
    cfg.n = 40;
    cfg.p = 0.55;
    auto g2 = simulate(cfg, g_count(2));
    const double eg = moments::binom_moment_g(40, 2, 1, 0.55);
    CHECK(std::fabs(g2.mean[0] - eg) <= 4.0 * g2.std_error[0]);

    CHECK_THROWS_AS(simulate(SimConfig{10, 0.5, 0, 1, 1}, head_count_functional()),
                    std::invalid_argument);
}
