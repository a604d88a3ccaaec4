#include <doctest.h>

#include "coinruns/moments.hpp"
#include "coinruns/run_distribution.hpp"

using namespace coinruns;

// Full-depth engine sweep: support of the law of R(n) has partition(n+1)
// atoms, so this is kept out of the fast unit binary.
TEST_CASE("marginal consistency of the engine up to n = 60") {
    const double p = 0.45;
    auto table = portmanteau::run_distribution_table(60, p);
    for (int n = 0; n <= 60; ++n) {
        const auto& dist = table[static_cast<std::size_t>(n)];
        CHECK(dist.total_mass() == doctest::Approx(1.0).epsilon(1e-11));
        std::vector<double> sums(static_cast<std::size_t>(n) + 2, 0.0);
        for (const auto& [x, w] : dist.atoms()) {
            CHECK(x.min_tosses() <= n);
            for (const auto& [len, cnt] : x.entries())
                sums[static_cast<std::size_t>(len)] += w * static_cast<double>(cnt);
        }
        for (int ell = 1; ell <= n; ++ell)
            CHECK(sums[static_cast<std::size_t>(ell)] ==
                  doctest::Approx(moments::mean_r(n, ell, p)).epsilon(1e-10));
    }
}
