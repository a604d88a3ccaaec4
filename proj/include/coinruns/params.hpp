#ifndef COINRUNS_PARAMS_HPP
#define COINRUNS_PARAMS_HPP

#include <cmath>
#include <stdexcept>

#include "coinruns/rational.hpp"

namespace coinruns {

// Coin bias p together with the geometric stopping weight w, and the
// derived split alpha = w*p (heads), beta = w*q (tails), gamma = 1-w
// (stop). alpha + beta + gamma = 1 with gamma > 0.
template <class T>
struct BasicParams {
    T p, q, w;
    T alpha, beta, gamma;

    BasicParams(T p_in, T w_in) : p(p_in), q(T(1) - p_in), w(w_in) {
        if (!(p > T(0) && p < T(1))) throw std::invalid_argument("Params: need 0 < p < 1");
        if (!(w > T(0) && w < T(1))) throw std::invalid_argument("Params: need 0 < w < 1");
        alpha = w * p;
        beta = w * q;
        gamma = T(1) - w;
    }
};

using Params = BasicParams<double>;
using ParamsQ = BasicParams<Rational>;

template <class T>
void check_bias(const T& p) {
    if (!(p > T(0) && p < T(1))) throw std::invalid_argument("bias p must satisfy 0 < p < 1");
}

}  // namespace coinruns

#endif
