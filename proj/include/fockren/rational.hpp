#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fockren {

// Exact rational arithmetic for scaling degrees and threshold checks.
// All degree comparisons in the classifier must be exact, so no floating
// point is allowed anywhere near them.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num) : num_(num), den_(1) {}
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { reduce(); }

    static Rational parse(const std::string& text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    Rational operator-() const { return Rational(-num_, den_, raw_tag{}); }
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    struct raw_tag {};
    Rational(std::int64_t n, std::int64_t d, raw_tag) : num_(n), den_(d) {}
    void reduce();

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace fockren
