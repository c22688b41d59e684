#include "fockren/rational.hpp"

namespace fockren {

void Rational::reduce() {
    if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    if (num_ == 0) den_ = 1;
}

Rational& Rational::operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    reduce();
    return *this;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

// Accepts "3", "-1/2", "0.5" (finite decimals become exact rationals).
Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t pos = 0;
    bool neg = false;
    if (text[pos] == '+' || text[pos] == '-') {
        neg = text[pos] == '-';
        ++pos;
    }
    std::int64_t intpart = 0;
    bool any = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        intpart = intpart * 10 + (text[pos] - '0');
        ++pos;
        any = true;
    }
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        std::int64_t den = 0;
        bool anyden = false;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            den = den * 10 + (text[pos] - '0');
            ++pos;
            anyden = true;
        }
        if (!any || !anyden || pos != text.size())
            throw std::invalid_argument("bad rational literal: " + text);
        Rational r(intpart, den);
        return neg ? -r : r;
    }
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::int64_t den = 1;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (den > 100000000000000000LL) throw std::invalid_argument("decimal too long: " + text);
            intpart = intpart * 10 + (text[pos] - '0');
            den *= 10;
            ++pos;
            any = true;
        }
        if (!any || pos != text.size())
            throw std::invalid_argument("bad decimal literal: " + text);
        Rational r(intpart, den);
        return neg ? -r : r;
    }
    if (!any || pos != text.size())
        throw std::invalid_argument("bad rational literal: " + text);
    Rational r(intpart);
    return neg ? -r : r;
}

} // namespace fockren
