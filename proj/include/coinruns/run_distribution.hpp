#ifndef COINRUNS_RUN_DISTRIBUTION_HPP
#define COINRUNS_RUN_DISTRIBUTION_HPP

#include <algorithm>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coinruns/params.hpp"
#include "coinruns/run_vector.hpp"

namespace coinruns::portmanteau {

// Exact law of a run-vector statistic after n tosses: probability-weighted
// atoms over RunVector, stored sorted for deterministic iteration.
// Immutable once constructed.
template <class T>
class BasicRunDistribution {
  public:
    using Atom = std::pair<RunVector, T>;

    BasicRunDistribution() = default;
    BasicRunDistribution(int n, T p, std::vector<Atom> atoms)
        : n_(n), p_(std::move(p)), atoms_(std::move(atoms)) {
        std::sort(atoms_.begin(), atoms_.end(),
                  [](const Atom& a, const Atom& b) { return a.first < b.first; });
    }

    int n() const { return n_; }
    const T& p() const { return p_; }
    const std::vector<Atom>& atoms() const { return atoms_; }

    T mass(const RunVector& x) const {
        auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                                   [](const Atom& a, const RunVector& v) { return a.first < v; });
        return (it != atoms_.end() && it->first == x) ? it->second : T(0);
    }

    T total_mass() const {
        T s(0);
        for (const auto& [x, w] : atoms_) s += w;
        return s;
    }

    // Total variation distance: (1/2) sum |P - Q| over the union of supports.
    T tv_distance(const BasicRunDistribution& other) const {
        T s(0);
        auto a = atoms_.begin();
        auto b = other.atoms_.begin();
        auto absT = [](const T& v) { return v < T(0) ? -v : v; };
        while (a != atoms_.end() || b != other.atoms_.end()) {
            if (b == other.atoms_.end() || (a != atoms_.end() && a->first < b->first))
                s += absT((a++)->second);
            else if (a == atoms_.end() || b->first < a->first)
                s += absT((b++)->second);
            else {
                s += absT(a->second - b->second);
                ++a;
                ++b;
            }
        }
        return s / T(2);
    }

  private:
    int n_ = 0;
    T p_{};
    std::vector<Atom> atoms_;
};

using RunDistribution = BasicRunDistribution<double>;
using RunDistributionQ = BasicRunDistribution<Rational>;

inline constexpr int kDefaultStateCap = 200;

namespace detail {

template <class T>
using Accumulator = std::unordered_map<RunVector, T, RunVectorHash>;

template <class T>
std::vector<typename BasicRunDistribution<T>::Atom> freeze(Accumulator<T>&& acc) {
    std::vector<typename BasicRunDistribution<T>::Atom> atoms(
        std::make_move_iterator(acc.begin()), std::make_move_iterator(acc.end()));
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return atoms;
}

}  // namespace detail

// Memo table of the laws of R(0), ..., R(n), built iteratively from the
// distributional form of the time-domain recursion:
//   L{R(m)} = q sum_{j=0}^{m-1} p^j (L{R(m-j-1)} shifted by e_j) + p^m d_{e_m}.
// Support of L{R(m)} has exactly partition(m+1) atoms, so cost grows
// superpolynomially; the cap guards against runaway requests.
template <class T>
std::vector<BasicRunDistribution<T>> run_distribution_table(int n, const T& p,
                                                            int cap = kDefaultStateCap) {
    if (n < 0) throw std::invalid_argument("run_distribution: n must be >= 0");
    check_bias(p);
    if (n > cap)
        throw ResourceError("run_distribution: n=" + std::to_string(n) +
                            " exceeds the state-space cap " + std::to_string(cap));
    const T q = T(1) - p;
    std::vector<T> ppow(static_cast<std::size_t>(n) + 1);
    ppow[0] = T(1);
    for (int j = 1; j <= n; ++j) ppow[j] = ppow[j - 1] * p;

    std::vector<BasicRunDistribution<T>> table;
    table.reserve(static_cast<std::size_t>(n) + 1);
    table.emplace_back(0, p, std::vector<typename BasicRunDistribution<T>::Atom>{
                                 {RunVector(), T(1)}});
    for (int m = 1; m <= n; ++m) {
        detail::Accumulator<T> acc;
        acc.reserve(2 * table[m - 1].atoms().size() + 16);
        for (const auto& [x, w] : table[m - 1].atoms()) acc[x] += q * w;  // j = 0
        for (int j = 1; j <= m - 1; ++j) {
            const T coef = q * ppow[j];
            for (const auto& [x, w] : table[m - j - 1].atoms())
                acc[x.with_unit_added(j)] += coef * w;
        }
        acc[RunVector::unit(m)] += ppow[m];
        table.emplace_back(m, p, detail::freeze(std::move(acc)));
    }
    return table;
}

template <class T>
BasicRunDistribution<T> run_distribution(int n, const T& p, int cap = kDefaultStateCap) {
    auto table = run_distribution_table(n, p, cap);
    return std::move(table.back());
}

// Law of G(n) = sigma(R(n)): pushforward of the run-vector law under the
// tail-sum map.
template <class T>
BasicRunDistribution<T> g_distribution(int n, const T& p, int cap = kDefaultStateCap) {
    auto base = run_distribution(n, p, cap);
    detail::Accumulator<T> acc;
    acc.reserve(base.atoms().size());
    for (const auto& [x, w] : base.atoms()) acc[sigma(x)] += w;
    return BasicRunDistribution<T>(n, p, detail::freeze(std::move(acc)));
}

// A d-dimensional functional of a run vector; eval writes dim values.
struct Functional {
    std::string name;
    int dim = 1;
    std::function<void(const RunVector&, double*)> eval;
};

// E h(R(n)) as a sum over the support, reduced in key order so the float
// result is reproducible.
std::vector<double> expect(const RunDistribution& dist, const Functional& h);
std::vector<double> expect(int n, double p, const Functional& h, int cap = kDefaultStateCap);

// Probability generating functions. z is sparse: unspecified indices are 1.
//   Phi_n(z) = E z^{R(n)},  Psi_n(z) = E z^{G(n)}
// via Phi_n = q Phi_{n-1} + q sum_{j=1}^{n-1} p^j z_j Phi_{n-j-1} + p^n z_n
// and the same with cumulative products z_1...z_j for Psi.
using ZMap = std::map<int, std::complex<double>>;
std::complex<double> pgf_r(int n, double p, const ZMap& z);
std::complex<double> pgf_g(int n, double p, const ZMap& z);

// E theta^{G_ell(n)}, the specialization of Psi_n with z_ell = theta and
// all other coordinates 1; equals 1 for n < ell.
std::complex<double> pgf_g_ell(int n, double p, int ell, std::complex<double> theta);

}  // namespace coinruns::portmanteau

#endif
