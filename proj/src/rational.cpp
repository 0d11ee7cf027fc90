#include "metadice/rational.hpp"

#include <cstdio>
#include <stdexcept>

namespace metadice {

Rational make_rational(Integer num, Integer den) {
    if (den == 0) {
        throw std::invalid_argument("rational: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);  // reduces to lowest terms
}

namespace {

Integer parse_integer(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("rational: empty integer part");
    }
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) {
        throw std::invalid_argument("rational: sign without digits");
    }
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw std::invalid_argument("rational: invalid character in '" + std::string(text) + "'");
        }
    }
    return Integer(std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text));
    }
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    return make_rational(std::move(num), std::move(den));
}

std::string to_string(const Rational& q) {
    if (denominator(q) == 1) {
        return numerator(q).str();
    }
    return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational& q) {
    return q.convert_to<double>();
}

int sign_of(const Rational& q) {
    return q.sign();
}

Rational rational_pow(const Rational& base, unsigned exp) {
    Rational result(1);
    for (unsigned i = 0; i < exp; ++i) {
        result *= base;
    }
    return result;
}

std::string decimal_string(double value, int significant_digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", significant_digits, value);
    return buffer;
}

}  // namespace metadice
