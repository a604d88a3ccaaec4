#include "coinruns/rational.hpp"

#include <cstdlib>

namespace coinruns {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt num(text.substr(0, slash));
            BigInt den(text.substr(slash + 1));
            if (den == 0) throw std::invalid_argument("zero denominator");
            return Rational(num, den);
        }
        std::size_t consumed = 0;
        double value = std::stod(text, &consumed);
        if (consumed != text.size()) throw std::invalid_argument("trailing characters");
        return Rational(value);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rational: cannot parse \"" + text + "\"");
    }
}

}  // namespace coinruns
