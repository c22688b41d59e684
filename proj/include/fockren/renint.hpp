#pragma once

#include <vector>

#include "fockren/symbol.hpp"

namespace fockren {

enum class Convergence { Convergent, IRDivergent, UVDivergent, BothDivergent };

enum class EqVerdict { EqualSymbolic, EqualNumeric, NotEqual, Unknown };

const char* to_string(Convergence c);
const char* to_string(EqVerdict v);

// Per-term convergence of the radial integral S_{d-1} int r^{d-1} term(r) dr.
// Borderline scaling (degree + d == 0 without a cutoff) counts as divergent.
bool term_ir_convergent(const SymTerm& t, int d);
bool term_uv_convergent(const SymTerm& t, int d);
Convergence term_convergence(const SymTerm& t, int d);

// Surface area of the unit sphere in R^d.
double sphere_area(int d);

// Exact value of the radial integral of a mass-free windowed power term.
// Returns nothing when the term carries mass factors.
std::optional<Complex> radial_integral_closed_form(const SymTerm& t, int d);

// Numerical route for any convergent term, to relative tolerance rel_tol.
Complex radial_integral_quadrature(const SymTerm& t, int d, double rel_tol);

// A formal integral int r(k) d^dk, identified by its integrand symbol and
// kept in normal form: convergent terms are integrated eagerly into the
// finite offset, so the stored integrand is purely divergent.
class RenIntegral {
public:
    RenIntegral() = default;
    explicit RenIntegral(int dim) : dim_(dim), integrand_(dim) {}

    static RenIntegral of(const Symbol& integrand, Complex offset = 0.0);
    static RenIntegral pair(const Symbol& s, const Symbol& t);
    static RenIntegral scalar(int dim, Complex c);

    int dim() const { return dim_; }
    const Symbol& integrand() const { return integrand_; }
    Complex offset() const { return offset_; }
    bool is_zero() const { return integrand_.is_zero() && offset_ == Complex(0.0, 0.0); }
    bool pure_scalar() const { return integrand_.is_zero(); }

    static int compare(const RenIntegral& a, const RenIntegral& b);
    friend bool operator==(const RenIntegral& a, const RenIntegral& b) {
        return compare(a, b) == 0;
    }
    friend bool operator!=(const RenIntegral& a, const RenIntegral& b) { return !(a == b); }

    std::string str() const;

private:
    int dim_ = 0;
    Symbol integrand_; // purely divergent terms
    Complex offset_{0.0, 0.0};
};

Convergence classify(const RenIntegral& r);
Complex evaluate_convergent(const RenIntegral& r, double rel_tol = 1e-10);

RenIntegral ren_add(const RenIntegral& a, const RenIntegral& b);
RenIntegral ren_scale(Complex c, const RenIntegral& r);
RenIntegral ren_neg(const RenIntegral& r);
RenIntegral ren_conj(const RenIntegral& r);

EqVerdict ren_equal(const RenIntegral& a, const RenIntegral& b, double tol);
EqVerdict same_class(const RenIntegral& a, const RenIntegral& b);
bool in_positive_cone(const RenIntegral& r);

// (finite part, purely divergent part); recombining with ren_add gives back
// the input.
std::pair<Complex, RenIntegral> split_finite_divergent(const RenIntegral& r);

// Commutative polynomials in formal integrals. Fully convergent factors are
// folded into the monomial coefficient.
class RenPolynomial {
public:
    struct Monomial {
        Complex coeff{1.0, 0.0};
        std::vector<RenIntegral> factors; // sorted, each with a divergent part
    };

    RenPolynomial() = default;
    explicit RenPolynomial(int dim) : dim_(dim) {}

    static RenPolynomial one(int dim);
    static RenPolynomial scalar(int dim, Complex c);
    static RenPolynomial factor(const RenIntegral& r);

    int dim() const { return dim_; }
    const std::vector<Monomial>& monomials() const { return monos_; }
    bool is_zero() const { return monos_.empty(); }
    // degree 0: a plain complex multiple of the empty product
    bool is_scalar() const;
    Complex scalar_value() const;
    int degree() const;
    bool has_divergent_factor() const;

    friend RenPolynomial poly_add(const RenPolynomial& a, const RenPolynomial& b);
    friend RenPolynomial poly_mul(const RenPolynomial& a, const RenPolynomial& b);
    friend RenPolynomial poly_scale(Complex c, const RenPolynomial& p);

    friend bool operator==(const RenPolynomial& a, const RenPolynomial& b);
    friend bool operator!=(const RenPolynomial& a, const RenPolynomial& b) { return !(a == b); }

    std::string str() const;

private:
    void normalize();

    int dim_ = 0;
    std::vector<Monomial> monos_;
};

} // namespace fockren
