#ifndef COINRUNS_GEO_HPP
#define COINRUNS_GEO_HPP

#include <complex>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "coinruns/binomials.hpp"
#include "coinruns/params.hpp"

namespace coinruns::geo {

// Two-parameter law on {0,1,2,...}: mass alpha0 at 0, geometric tail
// Q{n} = (1-alpha0)(1-beta0) beta0^{n-1} for n >= 1. Total mass 1 by
// construction; defective laws are not representable here.
template <class T>
struct BasicGeoLaw {
    T alpha0;
    T beta0;
};

using GeoLaw = BasicGeoLaw<double>;
using GeoLawQ = BasicGeoLaw<Rational>;

template <class T>
T geo_pmf(const BasicGeoLaw<T>& law, long long n) {
    if (n < 0) throw std::invalid_argument("geo_pmf: n must be >= 0");
    if (n == 0) return law.alpha0;
    return (T(1) - law.alpha0) * (T(1) - law.beta0) * pow_int(law.beta0, n - 1);
}

template <class T>
T geo_mean(const BasicGeoLaw<T>& law) {
    return (T(1) - law.alpha0) / (T(1) - law.beta0);
}

// r-th binomial moment E C(X, r), r >= 1.
template <class T>
T geo_binom_moment(const BasicGeoLaw<T>& law, int r) {
    if (r < 1) throw std::invalid_argument("geo_binom_moment: r must be >= 1");
    if (law.beta0 == T(0)) return r == 1 ? T(1) - law.alpha0 : T(0);
    return (T(1) - law.alpha0) / law.beta0 * pow_int(law.beta0 / (T(1) - law.beta0), r);
}

inline std::complex<double> geo_pgf(const GeoLaw& law, std::complex<double> theta) {
    std::complex<double> denom = 1.0 - law.beta0 * theta;
    if (std::abs(denom) < 1e-12)
        throw std::domain_error("geo_pgf: theta too close to the pole 1/beta0");
    return (law.alpha0 + (1.0 - law.alpha0 - law.beta0) * theta) / denom;
}

// Law of the count of runs of length exactly ell under geometric stopping.
// Mean is (1-alpha)^2 alpha^ell / gamma.
template <class T>
BasicGeoLaw<T> r_star_law(int ell, const BasicParams<T>& ps) {
    if (ell < 1) throw std::invalid_argument("r_star_law: ell must be >= 1");
    const T& a = ps.alpha;
    T sigma = a / (T(1) - a) - pow_int(a, ell);
    T denom = T(1) - ps.beta - ps.beta * sigma;
    return {ps.gamma * (T(1) + sigma) / denom, ps.beta * pow_int(a, ell) / denom};
}

// Law of the count of runs of length >= ell under geometric stopping.
template <class T>
BasicGeoLaw<T> g_star_law(int ell, const BasicParams<T>& ps) {
    if (ell < 1) throw std::invalid_argument("g_star_law: ell must be >= 1");
    T al = pow_int(ps.alpha, ell);
    T denom = ps.gamma + ps.beta * al;
    return {ps.gamma * (T(1) - al) / denom, ps.beta * al / denom};
}

// P(L* < ell): distribution function of the stopped longest run.
template <class T>
T l_star_cdf(int ell, const BasicParams<T>& ps) {
    if (ell < 1) throw std::invalid_argument("l_star_cdf: ell must be >= 1");
    T al = pow_int(ps.alpha, ell);
    return ps.gamma * (T(1) - al) / (ps.gamma + ps.beta * al);
}

// P(shortest stopped run >= ell). The shortest-run functional is defective:
// the zero vector has shortest +infinity, so the tail converges to a
// positive defect mass instead of 0.
//
// Derived by substituting h(x) = 1{shortest(x) >= ell} into the stopping
// identity: h(0) = 1, h(e_j) = 1{j >= ell}, h(x+e_j) = h(x) 1{j >= ell},
// giving tail = gamma*T / ((1-alpha) - beta*T) with T = 1 - alpha + alpha^ell.
template <class T>
T shortest_star_tail(int ell, const BasicParams<T>& ps) {
    if (ell < 1) throw std::invalid_argument("shortest_star_tail: ell must be >= 1");
    T t = T(1) - ps.alpha + pow_int(ps.alpha, ell);
    return ps.gamma * t / ((T(1) - ps.alpha) - ps.beta * t);
}

// P(shortest stopped run = +infinity) = P(R* = 0) = gamma / (1 - beta).
template <class T>
T shortest_star_defect(const BasicParams<T>& ps) {
    return ps.gamma / (T(1) - ps.beta);
}

// E h(R*) for linear h given by coefficients c_j = h(e_j), j >= 1
// (linearity forces h(0) = 0).
template <class T>
T linear_functional_mean(const std::map<int, T>& coeffs, const BasicParams<T>& ps) {
    T total(0);
    for (const auto& [j, c] : coeffs) {
        if (j < 1) throw std::invalid_argument("linear_functional_mean: coefficient keys must be >= 1");
        total += pow_int(ps.alpha, j) * c;
    }
    T one_minus_a = T(1) - ps.alpha;
    return one_minus_a * one_minus_a / ps.gamma * total;
}

// Joint pgf E z^{R*} with z_j given for j = 1..z.size() and z_j = 1 beyond;
// the geometric tail of the alpha-series is summed in closed form.
inline std::complex<double> joint_pgf_star(const std::vector<std::complex<double>>& z,
                                           const Params& ps) {
    std::complex<double> s = 0.0;
    double apow = 1.0;
    for (const auto& zj : z) {
        apow *= ps.alpha;
        s += apow * zj;
    }
    s += apow * ps.alpha / (1.0 - ps.alpha);  // alpha^{L+1}/(1-alpha)
    std::complex<double> denom = 1.0 - ps.beta - ps.beta * s;
    if (std::abs(denom) < 1e-12)
        throw std::domain_error("joint_pgf_star: denominator within eps of 0");
    return ps.gamma * (1.0 + s) / denom;
}

// Joint binomial moment E prod_j C(R*_{ell_j}, r_j); requires distinct
// ell_j and r_0 = sum r_j >= 1.
template <class T>
T joint_binom_moment_star(const std::vector<int>& ells, const std::vector<int>& rs,
                          const BasicParams<T>& ps) {
    if (ells.size() != rs.size() || ells.empty())
        throw std::invalid_argument("joint_binom_moment_star: ell/r size mismatch");
    std::set<int> seen;
    long long r0 = 0, lr = 0;
    for (std::size_t i = 0; i < ells.size(); ++i) {
        if (ells[i] < 1) throw std::invalid_argument("joint_binom_moment_star: ell must be >= 1");
        if (rs[i] < 0) throw std::invalid_argument("joint_binom_moment_star: r must be >= 0");
        if (!seen.insert(ells[i]).second)
            throw std::invalid_argument("joint_binom_moment_star: ell values must be distinct");
        r0 += rs[i];
        lr += static_cast<long long>(ells[i]) * rs[i];
    }
    if (r0 < 1) throw std::invalid_argument("joint_binom_moment_star: need sum of r >= 1");
    T multinom(1);
    long long partial = 0;
    for (int r : rs) {
        partial += r;
        multinom *= binom_as<T>(partial, r);
    }
    T one_minus_a = T(1) - ps.alpha;
    return multinom * pow_int(ps.alpha, lr) * pow_int(ps.beta, r0 - 1) *
           pow_int(one_minus_a, r0 + 1) / pow_int(ps.gamma, r0);
}

}  // namespace coinruns::geo

#endif
