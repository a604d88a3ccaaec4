#include "coinruns/run_distribution.hpp"

namespace coinruns::portmanteau {

std::vector<double> expect(const RunDistribution& dist, const Functional& h) {
    if (h.dim < 1 || !h.eval) throw std::invalid_argument("expect: invalid functional");
    std::vector<double> total(static_cast<std::size_t>(h.dim), 0.0);
    std::vector<double> value(static_cast<std::size_t>(h.dim), 0.0);
    for (const auto& [x, w] : dist.atoms()) {
        h.eval(x, value.data());
        for (int k = 0; k < h.dim; ++k) total[k] += w * value[k];
    }
    return total;
}

std::vector<double> expect(int n, double p, const Functional& h, int cap) {
    return expect(run_distribution(n, p, cap), h);
}

namespace {

std::complex<double> z_at(const ZMap& z, int j) {
    auto it = z.find(j);
    return it == z.end() ? std::complex<double>(1.0) : it->second;
}

// Shared recursion body; zcoef(j) is z_j for Phi and z_1...z_j for Psi.
template <class ZCoef>
std::complex<double> pgf_recursion(int n, double p, ZCoef&& zcoef) {
    check_bias(p);
    if (n < 0) throw std::invalid_argument("pgf: n must be >= 0");
    const double q = 1.0 - p;
    std::vector<std::complex<double>> phi(static_cast<std::size_t>(n) + 1);
    std::vector<double> ppow(static_cast<std::size_t>(n) + 1);
    phi[0] = 1.0;
    ppow[0] = 1.0;
    for (int j = 1; j <= n; ++j) ppow[j] = ppow[j - 1] * p;
    for (int m = 1; m <= n; ++m) {
        std::complex<double> acc = q * phi[m - 1];
        for (int j = 1; j <= m - 1; ++j) acc += q * ppow[j] * zcoef(j) * phi[m - j - 1];
        acc += ppow[m] * zcoef(m);
        phi[m] = acc;
    }
    return phi[n];
}

}  // namespace

std::complex<double> pgf_r(int n, double p, const ZMap& z) {
    return pgf_recursion(n, p, [&z](int j) { return z_at(z, j); });
}

std::complex<double> pgf_g(int n, double p, const ZMap& z) {
    // cumulative products z_1...z_j, extended by 1s past the last given index
    std::vector<std::complex<double>> prefix(static_cast<std::size_t>(n) + 1, 1.0);
    for (int j = 1; j <= n; ++j) prefix[j] = prefix[j - 1] * z_at(z, j);
    return pgf_recursion(n, p, [&prefix](int j) { return prefix[j]; });
}

std::complex<double> pgf_g_ell(int n, double p, int ell, std::complex<double> theta) {
    if (ell < 1) throw std::invalid_argument("pgf_g_ell: ell must be >= 1");
    if (n < ell) {
        check_bias(p);
        return 1.0;
    }
    ZMap z;
    z[ell] = theta;
    return pgf_g(n, p, z);
}

}  // namespace coinruns::portmanteau
