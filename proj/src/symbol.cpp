#include "fockren/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fockren {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Coefficients below this relative threshold are treated as cancelled.
constexpr double kCoeffEps = 1e-13;

bool coeff_negligible(Complex c, double scale) {
    // relative to the sum, so genuinely tiny single coefficients survive;
    // subnormal magnitudes have underflowed and count as zero
    return std::abs(c) <= kCoeffEps * scale ||
           std::abs(c) < std::numeric_limits<double>::min();
}

} // namespace

std::string Degree::str() const {
    switch (kind) {
        case NegInf: return "-inf";
        case PosInf: return "+inf";
        default: return value.str();
    }
}

Degree operator+(const Degree& a, const Degree& b) {
    if (a.kind == Degree::Finite && b.kind == Degree::Finite) return Degree(a.value + b.value);
    if (a.kind == Degree::NegInf || b.kind == Degree::NegInf) {
        if (a.kind == Degree::PosInf || b.kind == Degree::PosInf)
            throw std::logic_error("degree +inf added to -inf");
        return Degree::neg_inf();
    }
    return Degree::pos_inf();
}

bool operator<(const Degree& a, const Degree& b) {
    auto rank = [](const Degree& d) { return d.kind == Degree::NegInf ? -1 : d.kind == Degree::PosInf ? 1 : 0; };
    if (rank(a) != rank(b)) return rank(a) < rank(b);
    if (a.kind != Degree::Finite) return false;
    return a.value < b.value;
}

bool Window::unbounded() const { return std::isinf(hi); }

Rational SymTerm::uv_profile_degree() const {
    Rational deg = power;
    for (const auto& f : mass) deg += f.exponent;
    return deg;
}

Rational SymTerm::ir_profile_degree() const { return power; }

Degree SymTerm::uv_degree() const {
    if (window && !window->unbounded()) return Degree::neg_inf();
    return Degree(uv_profile_degree());
}

Degree SymTerm::ir_degree() const {
    if (window && window->lo > 0.0) return Degree::pos_inf();
    return Degree(ir_profile_degree());
}

Complex SymTerm::eval(double r) const {
    if (window && (r < window->lo || r >= window->hi)) return {0.0, 0.0};
    double v = std::pow(r, power.to_double());
    for (const auto& f : mass) v *= std::pow(r * r + f.mu * f.mu, 0.5 * f.exponent.to_double());
    return coeff * v;
}

namespace {

int cmp_rational(const Rational& a, const Rational& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

int cmp_double(double a, double b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

void canonicalize_mass(std::vector<MassFactor>& mass) {
    std::sort(mass.begin(), mass.end(),
              [](const MassFactor& a, const MassFactor& b) { return a.mu < b.mu; });
    std::vector<MassFactor> merged;
    for (const auto& f : mass) {
        if (!merged.empty() && merged.back().mu == f.mu) {
            merged.back().exponent += f.exponent;
        } else {
            merged.push_back(f);
        }
    }
    std::erase_if(merged, [](const MassFactor& f) { return f.exponent.is_zero(); });
    mass = std::move(merged);
}

} // namespace

// Coefficient-blind structural order: power, mass list, window.
int compare_terms_structurally(const SymTerm& a, const SymTerm& b) {
    if (int c = cmp_rational(a.power, b.power)) return c;
    if (a.mass.size() != b.mass.size()) return a.mass.size() < b.mass.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.mass.size(); ++i) {
        if (int c = cmp_double(a.mass[i].mu, b.mass[i].mu)) return c;
        if (int c = cmp_rational(a.mass[i].exponent, b.mass[i].exponent)) return c;
    }
    bool wa = a.window.has_value(), wb = b.window.has_value();
    if (wa != wb) return wa ? 1 : -1;
    if (wa) {
        if (int c = cmp_double(a.window->lo, b.window->lo)) return c;
        if (int c = cmp_double(a.window->hi, b.window->hi)) return c;
    }
    return 0;
}

Symbol::Symbol(int dim, std::vector<SymTerm> terms) : dim_(dim) {
    double scale = 0.0;
    for (auto& t : terms) {
        canonicalize_mass(t.mass);
        if (t.window) {
            if (t.window->lo < 0.0) throw std::invalid_argument("window with sigma < 0");
            if (!(t.window->lo < t.window->hi)) {
                t.coeff = 0.0; // empty shell
            }
            if (t.window->lo == 0.0 && t.window->unbounded()) t.window.reset();
        }
        for (const auto& f : t.mass)
            if (!(f.mu > 0.0)) throw std::invalid_argument("mass factor with mu <= 0");
        scale = std::max(scale, std::abs(t.coeff));
    }
    std::sort(terms.begin(), terms.end(), [](const SymTerm& a, const SymTerm& b) {
        return compare_terms_structurally(a, b) < 0;
    });
    for (auto& t : terms) {
        if (terms_.empty() || compare_terms_structurally(terms_.back(), t) != 0) {
            terms_.push_back(t);
        } else {
            terms_.back().coeff += t.coeff;
        }
    }
    std::erase_if(terms_, [&](const SymTerm& t) { return coeff_negligible(t.coeff, scale); });
}

Symbol Symbol::constant(int dim, Complex c) {
    SymTerm t;
    t.coeff = c;
    return Symbol(dim, {t});
}

Symbol Symbol::power(int dim, Rational a, Complex c) {
    SymTerm t;
    t.coeff = c;
    t.power = a;
    return Symbol(dim, {t});
}

Complex Symbol::evaluate(double r) const {
    if (!(r > 0.0)) throw std::invalid_argument("symbol evaluation requires r > 0");
    Complex v{0.0, 0.0};
    for (const auto& t : terms_) v += t.eval(r);
    return v;
}

Symbol operator+(const Symbol& a, const Symbol& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("adding symbols of different dimension");
    std::vector<SymTerm> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return Symbol(a.dim_, std::move(terms));
}

Symbol operator*(const Symbol& a, const Symbol& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("multiplying symbols of different dimension");
    std::vector<SymTerm> terms;
    terms.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            SymTerm t;
            t.coeff = ta.coeff * tb.coeff;
            t.power = ta.power + tb.power;
            t.mass = ta.mass;
            t.mass.insert(t.mass.end(), tb.mass.begin(), tb.mass.end());
            if (ta.window || tb.window) {
                Window w;
                w.lo = std::max(ta.window ? ta.window->lo : 0.0, tb.window ? tb.window->lo : 0.0);
                w.hi = std::min(ta.window ? ta.window->hi : kInf, tb.window ? tb.window->hi : kInf);
                if (!(w.lo < w.hi)) continue; // disjoint shells
                t.window = w;
            }
            terms.push_back(std::move(t));
        }
    }
    return Symbol(a.dim_, std::move(terms));
}

Symbol operator*(Complex c, const Symbol& s) {
    std::vector<SymTerm> terms = s.terms_;
    for (auto& t : terms) t.coeff *= c;
    return Symbol(s.dim_, std::move(terms));
}

bool operator==(const Symbol& a, const Symbol& b) { return Symbol::compare(a, b) == 0; }

int Symbol::compare(const Symbol& a, const Symbol& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_ ? -1 : 1;
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (int c = compare_terms_structurally(a.terms_[i], b.terms_[i])) return c;
        if (int c = cmp_double(a.terms_[i].coeff.real(), b.terms_[i].coeff.real())) return c;
        if (int c = cmp_double(a.terms_[i].coeff.imag(), b.terms_[i].coeff.imag())) return c;
    }
    return 0;
}

Symbol conjugate(const Symbol& s) {
    std::vector<SymTerm> terms = s.terms();
    for (auto& t : terms) t.coeff = std::conj(t.coeff);
    return Symbol(s.dim(), std::move(terms));
}

Symbol reciprocal(const Symbol& s) {
    if (!s.single_term())
        throw std::domain_error("reciprocal of a multi-term symbol is unsupported");
    SymTerm t = s.terms()[0];
    if (t.window)
        throw std::domain_error("reciprocal of a windowed symbol is unsupported");
    if (std::abs(t.coeff) == 0.0) throw std::domain_error("reciprocal of zero");
    SymTerm r;
    r.coeff = 1.0 / t.coeff;
    r.power = -t.power;
    r.mass = t.mass;
    for (auto& f : r.mass) f.exponent = -f.exponent;
    return Symbol(s.dim(), {r});
}

namespace {

// Two-sided bound witnesses for exact symbols: all coefficients positive
// (or a single term), no windows. In the UV regime every mass factor
// satisfies (r^2+mu^2)^(b/2) = r^b (1+mu^2/r^2)^(b/2) with the correction
// within [0.99,1.01]^(|b|/2) once r >= 10*mu; in the IR regime the factor
// is within the same band around mu^b once r <= mu/10. Lower-order terms
// are bounded by their value at the witness radius.
BoundWitness uv_witness(const std::vector<SymTerm>& terms, const Rational& m) {
    BoundWitness w;
    double mumax = 0.0;
    for (const auto& t : terms)
        for (const auto& f : t.mass) mumax = std::max(mumax, f.mu);
    w.eps = std::max(1.0, 10.0 * mumax);
    double lo = 0.0, hi = 0.0;
    for (const auto& t : terms) {
        double band = 1.0;
        Rational babs;
        for (const auto& f : t.mass) babs += (f.exponent < Rational(0) ? -f.exponent : f.exponent);
        band = std::pow(1.01, 0.5 * babs.to_double());
        double c = std::abs(t.coeff);
        Rational deg = t.uv_profile_degree();
        if (deg == m) {
            lo += c / band;
            hi += c * band;
        } else {
            // deg < m: contributes at most its value at eps relative to r^m
            hi += c * band * std::pow(w.eps, (deg - m).to_double());
        }
    }
    w.lo = 0.99 * lo;
    w.hi = 1.01 * hi;
    return w;
}

BoundWitness ir_witness(const std::vector<SymTerm>& terms, const Rational& beta) {
    BoundWitness w;
    double mumin = kInf;
    for (const auto& t : terms)
        for (const auto& f : t.mass) mumin = std::min(mumin, f.mu);
    w.eps = std::isinf(mumin) ? 1.0 : std::min(1.0, mumin / 10.0);
    double lo = 0.0, hi = 0.0;
    for (const auto& t : terms) {
        double band = 1.0;
        Rational babs;
        for (const auto& f : t.mass) babs += (f.exponent < Rational(0) ? -f.exponent : f.exponent);
        band = std::pow(1.01, 0.5 * babs.to_double());
        double c = std::abs(t.coeff);
        for (const auto& f : t.mass) c *= std::pow(f.mu, f.exponent.to_double());
        Rational deg = t.ir_profile_degree();
        if (deg == beta) {
            lo += c / band;
            hi += c * band;
        } else {
            // deg > beta: below eps it is dominated by its value at eps
            hi += c * band * std::pow(w.eps, (deg - beta).to_double());
        }
    }
    w.lo = 0.99 * lo;
    w.hi = 1.01 * hi;
    return w;
}

} // namespace

ScalingReport scaling(const Symbol& s) {
    if (s.is_zero()) throw std::invalid_argument("scaling of the zero symbol");
    ScalingReport rep;
    bool first = true;
    for (const auto& t : s.terms()) {
        Degree ir = t.ir_degree();
        Degree uv = t.uv_degree();
        if (first) {
            rep.beta = ir;
            rep.m = uv;
            first = false;
        } else {
            if (ir < rep.beta) rep.beta = ir;
            if (rep.m < uv) rep.m = uv;
        }
    }
    bool windowed = false;
    bool all_nonneg = true;
    for (const auto& t : s.terms()) {
        if (t.window) windowed = true;
        if (t.coeff.imag() != 0.0 || t.coeff.real() < 0.0) all_nonneg = false;
    }
    rep.exact = !windowed && (s.single_term() || all_nonneg);
    if (rep.exact && rep.beta.finite() && rep.m.finite()) {
        rep.uv_witness = uv_witness(s.terms(), rep.m.value);
        rep.ir_witness = ir_witness(s.terms(), rep.beta.value);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string fmt_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string fmt_complex(Complex c) {
    if (c.imag() == 0.0) return fmt_double(c.real());
    if (c.real() == 0.0) return fmt_double(c.imag()) + "i";
    std::string s = "(" + fmt_double(c.real());
    if (c.imag() >= 0.0) s += "+";
    s += fmt_double(c.imag()) + "i)";
    return s;
}

} // namespace

std::string Symbol::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const SymTerm& t = terms_[i];
        if (i) out += " + ";
        std::vector<std::string> factors;
        if (t.coeff != Complex(1.0, 0.0) || (t.power.is_zero() && t.mass.empty() && !t.window))
            factors.push_back(fmt_complex(t.coeff));
        if (!t.power.is_zero()) factors.push_back("pow(" + t.power.str() + ")");
        for (const auto& f : t.mass)
            factors.push_back("masspow(" + f.exponent.str() + "," + fmt_double(f.mu) + ")");
        if (t.window)
            factors.push_back("window(" + fmt_double(t.window->lo) + "," + fmt_double(t.window->hi) + ")");
        for (std::size_t j = 0; j < factors.size(); ++j) {
            if (j) out += "*";
            out += factors[j];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// parser: recursive descent over the mini-language

namespace {

class Parser {
public:
    Parser(const std::string& text, int dim) : text_(text), dim_(dim) {}

    Symbol parse() {
        Symbol s = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return s;
    }

private:
    const std::string& text_;
    int dim_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    bool keyword(const std::string& kw) {
        skip_ws();
        if (text_.compare(pos_, kw.size(), kw) == 0) {
            std::size_t after = pos_ + kw.size();
            if (after < text_.size() &&
                (std::isalnum(static_cast<unsigned char>(text_[after])) || text_[after] == '_'))
                return false;
            pos_ = after;
            return true;
        }
        return false;
    }

    Symbol expr() {
        bool neg = false;
        skip_ws();
        if (eat('-')) neg = true;
        else (void)eat('+');
        Symbol s = term();
        if (neg) s = -s;
        for (;;) {
            skip_ws();
            if (eat('+')) s = s + term();
            else if (eat('-')) s = s - term();
            else break;
        }
        return s;
    }

    Symbol term() {
        Symbol s = factor();
        for (;;) {
            skip_ws();
            if (eat('*')) s = s * factor();
            else break;
        }
        return s;
    }

    std::string number_token() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        bool any = false;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                text_[pos_] == '/' || text_[pos_] == 'e' || text_[pos_] == 'E' ||
                ((text_[pos_] == '+' || text_[pos_] == '-') &&
                 (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
            ++pos_;
            any = true;
        }
        if (!any) fail("expected a number");
        return text_.substr(start, pos_ - start);
    }

    Rational rational_token() {
        std::string tok = number_token();
        try {
            return Rational::parse(tok);
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }

    double double_token() {
        skip_ws();
        if (keyword("inf")) return kInf;
        std::string tok = number_token();
        if (tok.find('/') != std::string::npos) return Rational::parse(tok).to_double();
        return std::stod(tok);
    }

    Symbol factor() {
        skip_ws();
        if (keyword("pow")) {
            expect('(');
            Rational a = rational_token();
            expect(')');
            return Symbol::power(dim_, a);
        }
        if (keyword("masspow")) {
            expect('(');
            Rational b = rational_token();
            expect(',');
            double mu = double_token();
            expect(')');
            if (!(mu > 0.0)) fail("masspow requires mu > 0");
            SymTerm t;
            t.mass.push_back({b, mu});
            return Symbol(dim_, {t});
        }
        if (keyword("window")) {
            expect('(');
            double lo = double_token();
            expect(',');
            double hi = double_token();
            expect(')');
            if (lo < 0.0) fail("window requires sigma >= 0");
            if (!(lo < hi)) fail("window requires sigma < lambda");
            SymTerm t;
            t.window = Window{lo, hi};
            return Symbol(dim_, {t});
        }
        if (keyword("conj")) {
            expect('(');
            Symbol s = expr();
            expect(')');
            return conjugate(s);
        }
        if (keyword("inv")) {
            expect('(');
            Symbol s = expr();
            expect(')');
            try {
                return reciprocal(s);
            } catch (const std::domain_error& e) {
                fail(e.what());
            }
        }
        if (eat('(')) {
            Symbol s = expr();
            expect(')');
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == 'i') {
                // parenthesized complex like (1+2i) already handled termwise
            }
            return s;
        }
        // scalar literal, optionally imaginary
        std::string tok = number_token();
        double v;
        if (tok.find('/') != std::string::npos) v = Rational::parse(tok).to_double();
        else v = std::stod(tok);
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == 'i') {
            ++pos_;
            return Symbol::constant(dim_, Complex(0.0, v));
        }
        return Symbol::constant(dim_, Complex(v, 0.0));
    }
};

} // namespace

Symbol parse_symbol(const std::string& text, int dim) {
    if (dim <= 0) throw std::invalid_argument("dimension must be positive");
    Parser p(text, dim);
    return p.parse();
}

} // namespace fockren
