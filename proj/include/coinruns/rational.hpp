#ifndef COINRUNS_RATIONAL_HPP
#define COINRUNS_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <type_traits>

namespace coinruns {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <class T>
inline constexpr bool is_rational_v = std::is_same_v<T, Rational>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.template convert_to<double>(); }

// x^k for integer k >= 0, exact for Rational.
template <class T>
T pow_int(T x, long long k) {
    if (k < 0) throw std::invalid_argument("pow_int: negative exponent");
    T r(1);
    while (k > 0) {
        if (k & 1) r *= x;
        x *= x;
        k >>= 1;
    }
    return r;
}

// Parses "a/b" or a decimal literal. Decimal input is converted through
// its exact binary value, ratio input stays exact.
Rational parse_rational(const std::string& text);

// Thrown when a computation exceeds a configured state-space/size cap.
class ResourceError : public std::runtime_error {
  public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coinruns

#endif
