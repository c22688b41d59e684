#include "fockren/renint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fockren/quadrature.hpp"

namespace fockren {

namespace {
constexpr double kBuildTol = 1e-12;
constexpr double kCoeffEps = 1e-13;
} // namespace

const char* to_string(Convergence c) {
    switch (c) {
        case Convergence::Convergent: return "Convergent";
        case Convergence::IRDivergent: return "IRDivergent";
        case Convergence::UVDivergent: return "UVDivergent";
        default: return "BothDivergent";
    }
}

const char* to_string(EqVerdict v) {
    switch (v) {
        case EqVerdict::EqualSymbolic: return "EqualSymbolic";
        case EqVerdict::EqualNumeric: return "EqualNumeric";
        case EqVerdict::NotEqual: return "NotEqual";
        default: return "Unknown";
    }
}

bool term_ir_convergent(const SymTerm& t, int d) {
    if (t.window && t.window->lo > 0.0) return true;
    return t.ir_profile_degree() + Rational(d) > Rational(0);
}

bool term_uv_convergent(const SymTerm& t, int d) {
    if (t.window && !t.window->unbounded()) return true;
    return t.uv_profile_degree() + Rational(d) < Rational(0);
}

Convergence term_convergence(const SymTerm& t, int d) {
    bool ir = term_ir_convergent(t, d);
    bool uv = term_uv_convergent(t, d);
    if (ir && uv) return Convergence::Convergent;
    if (ir) return Convergence::UVDivergent;
    if (uv) return Convergence::IRDivergent;
    return Convergence::BothDivergent;
}

double sphere_area(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * M_PI;
        case 3: return 4.0 * M_PI;
        default: return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
    }
}

std::optional<Complex> radial_integral_closed_form(const SymTerm& t, int d) {
    if (!t.mass.empty()) return std::nullopt;
    double lo = t.window ? t.window->lo : 0.0;
    double hi = t.window ? t.window->hi : std::numeric_limits<double>::infinity();
    Rational expo = t.power + Rational(d); // integral of r^(a+d-1)
    double value;
    if (expo.is_zero()) {
        value = std::log(hi / lo); // requires lo > 0, hi < inf for convergence
    } else {
        double e = expo.to_double();
        double hie = std::isinf(hi) ? (e < 0 ? 0.0 : std::numeric_limits<double>::infinity())
                                    : std::pow(hi, e);
        double loe = lo == 0.0 ? (e > 0 ? 0.0 : std::numeric_limits<double>::infinity())
                               : std::pow(lo, e);
        value = (hie - loe) / e;
    }
    return t.coeff * sphere_area(d) * value;
}

Complex radial_integral_quadrature(const SymTerm& t, int d, double rel_tol) {
    double lo = t.window ? t.window->lo : 0.0;
    double hi = t.window ? t.window->hi : std::numeric_limits<double>::infinity();
    double a = t.power.to_double() + (d - 1);
    auto shape = [&](double r) {
        double v = std::pow(r, a);
        for (const auto& f : t.mass) v *= std::pow(r * r + f.mu * f.mu, 0.5 * f.exponent.to_double());
        return v;
    };
    double value;
    if (std::isinf(hi)) {
        // split at max(1, lo) so the tail substitution sees decay only
        double split = std::max(1.0, lo);
        value = integrate_tail(shape, split, rel_tol);
        if (split > lo) value += integrate_finite(shape, lo, split, rel_tol);
    } else {
        value = integrate_finite(shape, lo, hi, rel_tol);
    }
    return t.coeff * sphere_area(d) * value;
}

namespace {

Complex integrate_term(const SymTerm& t, int d, double rel_tol) {
    if (auto cf = radial_integral_closed_form(t, d)) return *cf;
    return radial_integral_quadrature(t, d, rel_tol);
}

} // namespace

RenIntegral RenIntegral::of(const Symbol& integrand, Complex offset) {
    RenIntegral r;
    r.dim_ = integrand.dim();
    std::vector<SymTerm> divergent;
    for (const auto& t : integrand.terms()) {
        if (term_convergence(t, r.dim_) == Convergence::Convergent) {
            offset += integrate_term(t, r.dim_, kBuildTol);
        } else {
            divergent.push_back(t);
        }
    }
    r.integrand_ = Symbol(r.dim_, std::move(divergent));
    r.offset_ = offset;
    return r;
}

RenIntegral RenIntegral::pair(const Symbol& s, const Symbol& t) {
    if (s.dim() != t.dim()) throw std::invalid_argument("pairing symbols of different dimension");
    return of(conjugate(s) * t);
}

RenIntegral RenIntegral::scalar(int dim, Complex c) {
    RenIntegral r(dim);
    r.offset_ = c;
    return r;
}

int RenIntegral::compare(const RenIntegral& a, const RenIntegral& b) {
    if (int c = Symbol::compare(a.integrand_, b.integrand_)) return c;
    if (a.offset_.real() != b.offset_.real()) return a.offset_.real() < b.offset_.real() ? -1 : 1;
    if (a.offset_.imag() != b.offset_.imag()) return a.offset_.imag() < b.offset_.imag() ? -1 : 1;
    return 0;
}

std::string RenIntegral::str() const {
    std::string out = "<<";
    out += integrand_.str();
    out += ">>";
    if (offset_ != Complex(0.0, 0.0)) {
        out += " + ";
        Symbol c = Symbol::constant(std::max(dim_, 1), offset_);
        out += c.str();
    }
    return out;
}

Convergence classify(const RenIntegral& r) {
    if (r.integrand().is_zero()) return Convergence::Convergent;
    bool ir_bad = false, uv_bad = false;
    for (const auto& t : r.integrand().terms()) {
        if (!term_ir_convergent(t, r.dim())) ir_bad = true;
        if (!term_uv_convergent(t, r.dim())) uv_bad = true;
    }
    if (ir_bad && uv_bad) return Convergence::BothDivergent;
    return ir_bad ? Convergence::IRDivergent : Convergence::UVDivergent;
}

Complex evaluate_convergent(const RenIntegral& r, double rel_tol) {
    if (classify(r) != Convergence::Convergent)
        throw std::domain_error("evaluate_convergent on a divergent integral");
    (void)rel_tol; // convergent mass was integrated eagerly at construction
    return r.offset();
}

RenIntegral ren_add(const RenIntegral& a, const RenIntegral& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("adding integrals of different dimension");
    return RenIntegral::of(a.integrand() + b.integrand(), a.offset() + b.offset());
}

RenIntegral ren_scale(Complex c, const RenIntegral& r) {
    return RenIntegral::of(c * r.integrand(), c * r.offset());
}

RenIntegral ren_neg(const RenIntegral& r) { return ren_scale(-1.0, r); }

RenIntegral ren_conj(const RenIntegral& r) {
    return RenIntegral::of(conjugate(r.integrand()), std::conj(r.offset()));
}

EqVerdict ren_equal(const RenIntegral& a, const RenIntegral& b, double tol) {
    RenIntegral diff = ren_add(a, ren_neg(b));
    if (!diff.integrand().is_zero()) return EqVerdict::NotEqual;
    if (diff.offset() == Complex(0.0, 0.0)) return EqVerdict::EqualSymbolic;
    if (std::abs(diff.offset()) <= tol) return EqVerdict::EqualNumeric;
    return EqVerdict::NotEqual;
}

EqVerdict same_class(const RenIntegral& a, const RenIntegral& b) {
    RenIntegral diff = ren_add(a, ren_neg(b));
    if (!diff.integrand().is_zero()) return EqVerdict::NotEqual;
    return EqVerdict::EqualSymbolic;
}

bool in_positive_cone(const RenIntegral& r) {
    if (r.offset().imag() != 0.0 || r.offset().real() < 0.0) return false;
    for (const auto& t : r.integrand().terms())
        if (t.coeff.imag() != 0.0 || t.coeff.real() < 0.0) return false;
    return true;
}

std::pair<Complex, RenIntegral> split_finite_divergent(const RenIntegral& r) {
    RenIntegral div = RenIntegral::of(r.integrand());
    return {r.offset(), div};
}

// ---------------------------------------------------------------------------
// polynomials

RenPolynomial RenPolynomial::one(int dim) { return scalar(dim, 1.0); }

RenPolynomial RenPolynomial::scalar(int dim, Complex c) {
    RenPolynomial p(dim);
    if (c != Complex(0.0, 0.0)) p.monos_.push_back({c, {}});
    return p;
}

RenPolynomial RenPolynomial::factor(const RenIntegral& r) {
    // expand into atomic factors so that the pairing stays linear:
    // <v,s+t> and <v,s> + <v,t> share one canonical form
    RenPolynomial p(r.dim());
    if (r.offset() != Complex(0.0, 0.0)) p.monos_.push_back({r.offset(), {}});
    for (const auto& t : r.integrand().terms()) {
        RenIntegral atom = RenIntegral::of(Symbol(r.dim(), {t}));
        p.monos_.push_back({Complex(1.0, 0.0), {atom}});
    }
    p.normalize();
    return p;
}

bool RenPolynomial::is_scalar() const {
    return monos_.empty() || (monos_.size() == 1 && monos_[0].factors.empty());
}

Complex RenPolynomial::scalar_value() const {
    if (!is_scalar()) throw std::domain_error("polynomial is not a scalar");
    return monos_.empty() ? Complex(0.0, 0.0) : monos_[0].coeff;
}

int RenPolynomial::degree() const {
    int deg = 0;
    for (const auto& m : monos_) deg = std::max(deg, static_cast<int>(m.factors.size()));
    return deg;
}

bool RenPolynomial::has_divergent_factor() const {
    for (const auto& m : monos_)
        if (!m.factors.empty()) return true;
    return false;
}

namespace {

int cmp_monomial(const RenPolynomial::Monomial& a, const RenPolynomial::Monomial& b) {
    if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.factors.size(); ++i)
        if (int c = RenIntegral::compare(a.factors[i], b.factors[i])) return c;
    return 0;
}

} // namespace

void RenPolynomial::normalize() {
    double scale = 0.0;
    for (auto& m : monos_) {
        // scalar multiples move into the coefficient so that c*r and r share
        // one canonical factor
        for (auto& f : m.factors) {
            if (f.integrand().is_zero()) continue;
            Complex lead = f.integrand().terms()[0].coeff;
            if (lead != Complex(1.0, 0.0)) {
                f = ren_scale(1.0 / lead, f);
                m.coeff *= lead;
            }
        }
        std::sort(m.factors.begin(), m.factors.end(),
                  [](const RenIntegral& a, const RenIntegral& b) {
                      return RenIntegral::compare(a, b) < 0;
                  });
        scale = std::max(scale, std::abs(m.coeff));
    }
    std::sort(monos_.begin(), monos_.end(),
              [](const Monomial& a, const Monomial& b) { return cmp_monomial(a, b) < 0; });
    std::vector<Monomial> merged;
    for (auto& m : monos_) {
        if (!merged.empty() && cmp_monomial(merged.back(), m) == 0) {
            merged.back().coeff += m.coeff;
        } else {
            merged.push_back(std::move(m));
        }
    }
    std::erase_if(merged, [&](const Monomial& m) {
        return std::abs(m.coeff) <= kCoeffEps * scale ||
               std::abs(m.coeff) < std::numeric_limits<double>::min();
    });
    monos_ = std::move(merged);
}

RenPolynomial poly_add(const RenPolynomial& a, const RenPolynomial& b) {
    if (a.dim_ != b.dim_ && !a.monos_.empty() && !b.monos_.empty())
        throw std::invalid_argument("adding polynomials of different dimension");
    RenPolynomial out(a.monos_.empty() ? b.dim_ : a.dim_);
    out.monos_ = a.monos_;
    out.monos_.insert(out.monos_.end(), b.monos_.begin(), b.monos_.end());
    out.normalize();
    return out;
}

RenPolynomial poly_mul(const RenPolynomial& a, const RenPolynomial& b) {
    RenPolynomial out(a.monos_.empty() ? b.dim_ : a.dim_);
    for (const auto& ma : a.monos_) {
        for (const auto& mb : b.monos_) {
            RenPolynomial::Monomial m;
            m.coeff = ma.coeff * mb.coeff;
            m.factors = ma.factors;
            m.factors.insert(m.factors.end(), mb.factors.begin(), mb.factors.end());
            out.monos_.push_back(std::move(m));
        }
    }
    out.normalize();
    return out;
}

RenPolynomial poly_scale(Complex c, const RenPolynomial& p) {
    RenPolynomial out = p;
    for (auto& m : out.monos_) m.coeff *= c;
    out.normalize();
    return out;
}

bool operator==(const RenPolynomial& a, const RenPolynomial& b) {
    if (a.monos_.size() != b.monos_.size()) return false;
    for (std::size_t i = 0; i < a.monos_.size(); ++i) {
        if (cmp_monomial(a.monos_[i], b.monos_[i]) != 0) return false;
        if (a.monos_[i].coeff != b.monos_[i].coeff) return false;
    }
    return true;
}

std::string RenPolynomial::str() const {
    if (monos_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < monos_.size(); ++i) {
        if (i) out += " + ";
        out += Symbol::constant(std::max(dim_, 1), monos_[i].coeff).str();
        for (const auto& f : monos_[i].factors) out += "*" + f.str();
    }
    return out;
}

} // namespace fockren
