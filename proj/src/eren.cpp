#include "fockren/eren.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fockren {

namespace {
constexpr double kCoeffEps = 1e-13;
}

RenSum::RenSum(int dim, std::vector<ExpTerm> terms) : dim_(dim) {
    double scale = 0.0;
    for (auto& t : terms) {
        // enforce the normal form: finite parts live in the coefficient
        auto [finite, divergent] = split_finite_divergent(t.exponent);
        if (finite != Complex(0.0, 0.0)) t.coeff *= std::exp(finite);
        t.exponent = divergent;
        scale = std::max(scale, std::abs(t.coeff));
    }
    std::sort(terms.begin(), terms.end(), [](const ExpTerm& a, const ExpTerm& b) {
        return RenIntegral::compare(a.exponent, b.exponent) < 0;
    });
    for (auto& t : terms) {
        if (!terms_.empty() && RenIntegral::compare(terms_.back().exponent, t.exponent) == 0) {
            terms_.back().coeff += t.coeff;
        } else {
            terms_.push_back(std::move(t));
        }
    }
    std::erase_if(terms_, [&](const ExpTerm& t) {
        return std::abs(t.coeff) <= kCoeffEps * scale ||
               std::abs(t.coeff) < std::numeric_limits<double>::min();
    });
}

RenSum RenSum::of_complex(int dim, Complex c) {
    return RenSum(dim, {ExpTerm{c, RenIntegral(dim)}});
}

RenSum RenSum::exponential(const RenIntegral& r, Complex c) {
    return RenSum(r.dim(), {ExpTerm{c, r}});
}

RenSum operator+(const RenSum& a, const RenSum& b) {
    std::vector<ExpTerm> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return RenSum(a.dim_ ? a.dim_ : b.dim_, std::move(terms));
}

RenSum operator*(const RenSum& a, const RenSum& b) {
    std::vector<ExpTerm> terms;
    terms.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_)
            terms.push_back(ExpTerm{ta.coeff * tb.coeff, ren_add(ta.exponent, tb.exponent)});
    return RenSum(a.dim_ ? a.dim_ : b.dim_, std::move(terms));
}

RenSum operator*(Complex c, const RenSum& s) {
    std::vector<ExpTerm> terms = s.terms_;
    for (auto& t : terms) t.coeff *= c;
    return RenSum(s.dim_, std::move(terms));
}

RenSum RenSum::conj() const {
    std::vector<ExpTerm> terms = terms_;
    for (auto& t : terms) {
        t.coeff = std::conj(t.coeff);
        t.exponent = ren_conj(t.exponent);
    }
    return RenSum(dim_, std::move(terms));
}

std::string RenSum::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) out += " + ";
        out += Symbol::constant(std::max(dim_, 1), terms_[i].coeff).str();
        if (!terms_[i].exponent.is_zero()) out += "*exp(" + terms_[i].exponent.str() + ")";
    }
    return out;
}

RenScalar::RenScalar(RenSum num, RenSum den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("division by the zero renormalization element");
    if (num_.is_zero()) {
        den_ = RenSum::of_complex(num_.dim(), 1.0);
        return;
    }
    if (den_.terms().size() == 1) {
        // divide the single exponential out
        const ExpTerm& d = den_.terms()[0];
        RenSum inv = RenSum::exponential(ren_neg(d.exponent), 1.0 / d.coeff);
        num_ = num_ * inv;
        den_ = RenSum::of_complex(num_.dim(), 1.0);
        return;
    }
    Complex lead = den_.terms()[0].coeff;
    num_ = (1.0 / lead) * num_;
    den_ = (1.0 / lead) * den_;
}

RenScalar RenScalar::of_complex(int dim, Complex c) {
    return RenScalar(RenSum::of_complex(dim, c), RenSum::of_complex(dim, 1.0));
}

RenScalar RenScalar::exp_ren(const RenIntegral& r) {
    return RenScalar(RenSum::exponential(r), RenSum::of_complex(r.dim(), 1.0));
}

std::optional<Complex> RenScalar::as_complex() const {
    if (num_.is_zero()) return Complex(0.0, 0.0);
    if (den_.terms().size() == 1 && den_.terms()[0].exponent.is_zero() &&
        num_.terms().size() == 1 && num_.terms()[0].exponent.is_zero()) {
        return num_.terms()[0].coeff / den_.terms()[0].coeff;
    }
    return std::nullopt;
}

RenScalar RenScalar::conj() const { return RenScalar(num_.conj(), den_.conj()); }

std::string RenScalar::str() const {
    if (den_.terms().size() == 1 && den_.terms()[0].exponent.is_zero() &&
        den_.terms()[0].coeff == Complex(1.0, 0.0))
        return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

RenScalar eren_add(const RenScalar& a, const RenScalar& b) {
    return RenScalar(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

RenScalar eren_sub(const RenScalar& a, const RenScalar& b) { return eren_add(a, eren_neg(b)); }

RenScalar eren_mul(const RenScalar& a, const RenScalar& b) {
    return RenScalar(a.num() * b.num(), a.den() * b.den());
}

RenScalar eren_div(const RenScalar& a, const RenScalar& b) {
    if (b.is_zero()) throw std::domain_error("division by the zero renormalization element");
    return RenScalar(a.num() * b.den(), a.den() * b.num());
}

RenScalar eren_neg(const RenScalar& a) {
    return RenScalar(Complex(-1.0, 0.0) * a.num(), a.den());
}

RenScalar eren_inv(const RenScalar& a) {
    return eren_div(RenScalar::one(a.dim()), a);
}

namespace {

// max |coeff| over the sum, used for relative comparisons
double sum_scale(const RenSum& s) {
    double m = 0.0;
    for (const auto& t : s.terms()) m = std::max(m, std::abs(t.coeff));
    return m;
}

EqVerdict compare_sums(const RenSum& a, const RenSum& b, double tol) {
    double scale = std::max({sum_scale(a), sum_scale(b), 1.0});
    std::size_t i = 0, j = 0;
    bool exact = true;
    double worst = 0.0;
    while (i < a.terms().size() || j < b.terms().size()) {
        int cmp;
        if (i == a.terms().size()) cmp = 1;
        else if (j == b.terms().size()) cmp = -1;
        else cmp = RenIntegral::compare(a.terms()[i].exponent, b.terms()[j].exponent);
        if (cmp < 0) {
            worst = std::max(worst, std::abs(a.terms()[i].coeff));
            exact = false;
            ++i;
        } else if (cmp > 0) {
            worst = std::max(worst, std::abs(b.terms()[j].coeff));
            exact = false;
            ++j;
        } else {
            Complex d = a.terms()[i].coeff - b.terms()[j].coeff;
            if (d != Complex(0.0, 0.0)) exact = false;
            worst = std::max(worst, std::abs(d));
            ++i;
            ++j;
        }
    }
    if (exact) return EqVerdict::EqualSymbolic;
    if (worst <= tol * scale) return EqVerdict::EqualNumeric;
    return EqVerdict::NotEqual;
}

} // namespace

EqVerdict eren_equal(const RenScalar& a, const RenScalar& b, double tol) {
    // cross-multiplication is sound because the coefficient ring is entire
    return compare_sums(a.num() * b.den(), b.num() * a.den(), tol);
}

std::vector<RenIntegral> exponent_classes(const RenScalar& a) {
    std::vector<RenIntegral> out;
    auto collect = [&](const RenSum& s) {
        for (const auto& t : s.terms()) {
            bool seen = false;
            for (const auto& e : out)
                if (RenIntegral::compare(e, t.exponent) == 0) seen = true;
            if (!seen) out.push_back(t.exponent);
        }
    };
    collect(a.num());
    collect(a.den());
    return out;
}

} // namespace fockren
