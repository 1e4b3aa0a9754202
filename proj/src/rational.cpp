#include "kamrfp/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace kamrfp {

namespace {

bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_literal(text)) {
            throw std::invalid_argument("bad rational literal: '" + text + "'");
        }
        return Rat(boost::multiprecision::mpz_int(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) {
        throw std::invalid_argument("bad rational literal: '" + text + "'");
    }
    boost::multiprecision::mpz_int q(den);
    if (q == 0) {
        throw std::invalid_argument("zero denominator in rational literal: '" + text + "'");
    }
    return Rat(boost::multiprecision::mpz_int(num), q);
}

std::string rat_to_string(const Rat& value) {
    return value.str();  // mpq canonical form already prints "p" or "p/q"
}

}  // namespace kamrfp
