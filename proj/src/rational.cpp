#include "exwb/rational.hpp"

#include <sstream>

namespace exwb {

namespace {

BigInt parse_big_int(const std::string& text, const std::string& what) {
    if (text.empty())
        throw std::invalid_argument("empty " + what + " in rational literal");
    std::size_t start = (text[0] == '+' || text[0] == '-') ? 1 : 0;
    if (start == text.size())
        throw std::invalid_argument("bad " + what + " in rational literal: '" + text + "'");
    for (std::size_t k = start; k < text.size(); ++k) {
        if (text[k] < '0' || text[k] > '9')
            throw std::invalid_argument("bad " + what + " in rational literal: '" + text + "'");
    }
    return BigInt(text);
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos)
        return Rational(parse_big_int(text, "integer"));
    const BigInt num = parse_big_int(text.substr(0, slash), "numerator");
    const BigInt den = parse_big_int(text.substr(slash + 1), "denominator");
    if (den == 0)
        throw std::invalid_argument("zero denominator in rational literal: '" + text + "'");
    return Rational(num, den);
}

std::string to_fraction_string(const Rational& r) {
    std::ostringstream out;
    out << numerator(r);
    if (denominator(r) != 1)
        out << '/' << denominator(r);
    return out.str();
}

}  // namespace exwb
