#pragma once

#include "fockren/renint.hpp"

namespace fockren {

// One summand c * e^r. Exponents are kept offset-free and purely divergent:
// any finite part is pulled out into the coefficient on construction.
struct ExpTerm {
    Complex coeff{0.0, 0.0};
    RenIntegral exponent; // pure divergent canonical form, offset 0
};

class RenSum {
public:
    RenSum() = default;
    explicit RenSum(int dim) : dim_(dim) {}
    RenSum(int dim, std::vector<ExpTerm> terms);

    static RenSum of_complex(int dim, Complex c);
    // c * e^r with the finite part of r folded into the coefficient
    static RenSum exponential(const RenIntegral& r, Complex c = 1.0);

    int dim() const { return dim_; }
    const std::vector<ExpTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend RenSum operator+(const RenSum& a, const RenSum& b);
    friend RenSum operator*(const RenSum& a, const RenSum& b);
    friend RenSum operator*(Complex c, const RenSum& s);
    friend RenSum operator-(const RenSum& s) { return Complex(-1.0, 0.0) * s; }

    RenSum conj() const;
    std::string str() const;

private:
    int dim_ = 0;
    std::vector<ExpTerm> terms_;
};

// Element of the field of exponential wave-function renormalizations:
// a fraction of RenSums in normal form (denominator leading coefficient 1,
// single-exponential denominators divided out).
class RenScalar {
public:
    RenScalar() = default;
    explicit RenScalar(int dim) : num_(dim), den_(RenSum::of_complex(dim, 1.0)) {}
    RenScalar(RenSum num, RenSum den);

    static RenScalar zero(int dim) { return RenScalar(dim); }
    static RenScalar one(int dim) { return of_complex(dim, 1.0); }
    static RenScalar of_complex(int dim, Complex c);
    static RenScalar exp_ren(const RenIntegral& r); // e^r, normalized

    int dim() const { return num_.dim(); }
    const RenSum& num() const { return num_; }
    const RenSum& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    // present iff the element reduces to an ordinary complex number
    std::optional<Complex> as_complex() const;
    RenScalar conj() const;
    std::string str() const;

private:
    RenSum num_, den_;
};

RenScalar eren_add(const RenScalar& a, const RenScalar& b);
RenScalar eren_sub(const RenScalar& a, const RenScalar& b);
RenScalar eren_mul(const RenScalar& a, const RenScalar& b);
RenScalar eren_div(const RenScalar& a, const RenScalar& b);
RenScalar eren_neg(const RenScalar& a);
RenScalar eren_inv(const RenScalar& a);

EqVerdict eren_equal(const RenScalar& a, const RenScalar& b, double tol = 1e-9);

// Divergence classes of the exponents appearing in the (normalized) element;
// used for the addability check on dressed states.
std::vector<RenIntegral> exponent_classes(const RenScalar& a);

} // namespace fockren
