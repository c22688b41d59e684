#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "fockren/rational.hpp"

namespace fockren {

using Complex = std::complex<double>;

// Extended rational: a scaling degree may be pushed to +/- infinity by a
// radial cutoff window.
struct Degree {
    enum Kind { NegInf, Finite, PosInf } kind = Finite;
    Rational value;

    Degree() = default;
    Degree(Rational v) : kind(Finite), value(v) {}
    static Degree neg_inf() { return Degree(NegInf, Rational()); }
    static Degree pos_inf() { return Degree(PosInf, Rational()); }

    bool finite() const { return kind == Finite; }
    std::string str() const;

    friend Degree operator+(const Degree& a, const Degree& b);
    friend bool operator==(const Degree& a, const Degree& b) {
        return a.kind == b.kind && (a.kind != Finite || a.value == b.value);
    }
    friend bool operator!=(const Degree& a, const Degree& b) { return !(a == b); }
    friend bool operator<(const Degree& a, const Degree& b);

private:
    Degree(Kind k, Rational v) : kind(k), value(v) {}
};

// One factor (|k|^2 + mu^2)^(exponent/2) with mu > 0. A massless factor
// (mu = 0) must be folded into the plain power exponent instead.
struct MassFactor {
    Rational exponent; // the b in (|k|^2+mu^2)^(b/2)
    double mu = 1.0;
};

// Radial indicator of the shell sigma <= |k| < lambda.
struct Window {
    double lo = 0.0;
    double hi = 0.0; // +inf allowed
    bool unbounded() const;
};

// c * |k|^a * prod_i (|k|^2 + mu_i^2)^(b_i/2) * [window]
struct SymTerm {
    Complex coeff{1.0, 0.0};
    Rational power;                 // the a in |k|^a
    std::vector<MassFactor> mass;   // canonically sorted, same-mu factors merged
    std::optional<Window> window;

    Rational uv_profile_degree() const; // a + sum b_i
    Rational ir_profile_degree() const; // a  (mass factors tend to constants at 0)
    Degree uv_degree() const;           // -inf when the window caps at lambda < inf
    Degree ir_degree() const;           // +inf when the window starts at sigma > 0
    Complex eval(double r) const;
};

struct BoundWitness {
    double eps = 1.0; // bound valid for r > eps (UV) or r < eps (IR)
    double lo = 0.0;  // lo * r^deg <= |s(r)|
    double hi = 0.0;  // |s(r)| <= hi * r^deg
};

struct ScalingReport {
    Degree beta; // IR degree
    Degree m;    // UV degree
    bool exact = false;
    std::optional<BoundWitness> uv_witness; // present when exact
    std::optional<BoundWitness> ir_witness;
};

// A finite canonical sum of radial terms over R^d \ {0}. Immutable.
class Symbol {
public:
    Symbol() = default;
    explicit Symbol(int dim) : dim_(dim) {}
    Symbol(int dim, std::vector<SymTerm> terms);

    static Symbol zero(int dim) { return Symbol(dim); }
    static Symbol constant(int dim, Complex c);
    static Symbol power(int dim, Rational a, Complex c = 1.0);

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    bool single_term() const { return terms_.size() == 1; }
    const std::vector<SymTerm>& terms() const { return terms_; }

    Complex evaluate(double r) const;
    std::string str() const;

    friend Symbol operator+(const Symbol& a, const Symbol& b);
    friend Symbol operator*(const Symbol& a, const Symbol& b);
    friend Symbol operator*(Complex c, const Symbol& s);
    friend Symbol operator-(const Symbol& s) { return Complex(-1.0, 0.0) * s; }
    friend Symbol operator-(const Symbol& a, const Symbol& b) { return a + (-b); }

    friend bool operator==(const Symbol& a, const Symbol& b);
    friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }

    // Total order on canonical forms, used for deterministic term layouts.
    static int compare(const Symbol& a, const Symbol& b);

private:
    int dim_ = 0;
    std::vector<SymTerm> terms_;
};

Symbol conjugate(const Symbol& s);
// Only defined for a single unwindowed term (nonvanishing on all of R^d \ {0}).
Symbol reciprocal(const Symbol& s);
ScalingReport scaling(const Symbol& s);

int compare_terms_structurally(const SymTerm& a, const SymTerm& b);

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// Expression mini-language:
//   pow(a) masspow(b,mu) window(sigma,lambda) conj(e) inv(e)
//   scalar literals (optionally imaginary: 2i), '*', '+', '-', parentheses.
// Round-trips exactly with Symbol::str().
Symbol parse_symbol(const std::string& text, int dim);

} // namespace fockren
