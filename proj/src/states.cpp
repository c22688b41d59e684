#include "fockren/states.hpp"

#include <algorithm>

namespace fockren {

const char* to_string(StateSpace s) { return s == StateSpace::Core ? "core" : "extended"; }

int BaseState::compare(const BaseState& a, const BaseState& b) {
    if (a.label != b.label) return a.label < b.label ? -1 : 1;
    if (a.max_fermions != b.max_fermions) return a.max_fermions < b.max_fermions ? -1 : 1;
    if (a.support_radius != b.support_radius) return a.support_radius < b.support_radius ? -1 : 1;
    if (a.avoids_collisions != b.avoids_collisions) return a.avoids_collisions ? 1 : -1;
    return 0;
}

bool PotentialFactor::compact_profile() const {
    if (profile.is_zero()) return true;
    for (const auto& t : profile.terms())
        if (!t.window || t.window->lo <= 0.0 || t.window->unbounded()) return false;
    return true;
}

namespace {

bool symbol_compact(const Symbol& s) {
    if (s.is_zero()) return false;
    for (const auto& t : s.terms())
        if (!t.window || t.window->lo <= 0.0 || t.window->unbounded()) return false;
    return true;
}

int cmp_opt_symbol(const std::optional<Symbol>& a, const std::optional<Symbol>& b) {
    if (a.has_value() != b.has_value()) return a.has_value() ? 1 : -1;
    if (!a) return 0;
    return Symbol::compare(*a, *b);
}

} // namespace

int NormalTerm::compare_word(const NormalTerm& a, const NormalTerm& b) {
    if (int c = BaseState::compare(a.base, b.base)) return c;
    if (a.creations.size() != b.creations.size())
        return a.creations.size() < b.creations.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.creations.size(); ++i) {
        if (a.creations[i].fermion_index != b.creations[i].fermion_index)
            return a.creations[i].fermion_index < b.creations[i].fermion_index ? -1 : 1;
        if (int c = Symbol::compare(a.creations[i].profile, b.creations[i].profile)) return c;
    }
    if (a.potentials.size() != b.potentials.size())
        return a.potentials.size() < b.potentials.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.potentials.size(); ++i) {
        if (a.potentials[i].kind != b.potentials[i].kind)
            return a.potentials[i].kind < b.potentials[i].kind ? -1 : 1;
        if (int c = Symbol::compare(a.potentials[i].profile, b.potentials[i].profile)) return c;
    }
    if (a.h0.size() != b.h0.size()) return a.h0.size() < b.h0.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.h0.size(); ++i) {
        if (int c = Symbol::compare(a.h0[i].theta, b.h0[i].theta)) return c;
        if (int c = Symbol::compare(a.h0[i].omega, b.h0[i].omega)) return c;
        if (a.h0[i].inner != b.h0[i].inner) return a.h0[i].inner ? 1 : -1;
    }
    if (int c = cmp_opt_symbol(a.dressing_all, b.dressing_all)) return c;
    if (int c = cmp_opt_symbol(a.dressing_first, b.dressing_first)) return c;
    return 0;
}

StateSpace NormalTerm::space() const {
    if (scalars.has_divergent_factor()) return StateSpace::Extended;
    for (const auto& p : potentials)
        if (!p.compact_profile()) return StateSpace::Extended;
    return StateSpace::Core;
}

std::string NormalTerm::str() const {
    std::string out = "(" + coeff.str() + ")";
    if (!(scalars == RenPolynomial::one(dim))) out += "*[" + scalars.str() + "]";
    for (const auto& m : h0)
        out += std::string(m.inner ? "*H0in(" : "*H0(") + m.theta.str() + "; " + m.omega.str() + ")";
    for (const auto& c : creations)
        out += "*Adag" + std::to_string(c.fermion_index) + "(" + c.profile.str() + ")";
    for (const auto& p : potentials)
        out += std::string(p.kind == PotentialFactor::AllPairs ? "*V(" : "*V1(") +
               p.profile.str() + ")";
    if (dressing_all) out += "*W(" + dressing_all->str() + ")";
    if (dressing_first) out += "*W1(" + dressing_first->str() + ")";
    out += "*|" + base.label + ",M=" + std::to_string(base.max_fermions) + ">";
    return out;
}

NormalTerm bare_term(int dim, const BaseState& base) {
    NormalTerm t;
    t.dim = dim;
    t.coeff = RenScalar::one(dim);
    t.scalars = RenPolynomial::one(dim);
    t.base = base;
    return t;
}

namespace {

// Creations and pair potentials are linear in their profiles: split
// multi-term profiles into one term per atom and fold the atom coefficient
// into the eRen coefficient, so both distributed and fused forms coincide.
void expand_linear_factors(const NormalTerm& term, std::vector<NormalTerm>& out) {
    for (std::size_t i = 0; i < term.creations.size(); ++i) {
        const Symbol& p = term.creations[i].profile;
        if (p.is_zero()) return; // the whole term vanishes
        if (p.terms().size() > 1 || p.terms()[0].coeff != Complex(1.0, 0.0)) {
            for (const auto& atom : p.terms()) {
                NormalTerm split = term;
                SymTerm unit = atom;
                unit.coeff = Complex(1.0, 0.0);
                split.creations[i].profile = Symbol(term.dim, {unit});
                split.creations[i].compact_support =
                    unit.window && unit.window->lo > 0.0 && !unit.window->unbounded();
                split.coeff = eren_mul(split.coeff, RenScalar::of_complex(term.dim, atom.coeff));
                expand_linear_factors(split, out);
            }
            return;
        }
    }
    for (std::size_t i = 0; i < term.potentials.size(); ++i) {
        const Symbol& p = term.potentials[i].profile;
        if (p.is_zero()) return;
        if (p.terms().size() > 1 || p.terms()[0].coeff != Complex(1.0, 0.0)) {
            for (const auto& atom : p.terms()) {
                NormalTerm split = term;
                SymTerm unit = atom;
                unit.coeff = Complex(1.0, 0.0);
                split.potentials[i].profile = Symbol(term.dim, {unit});
                split.coeff = eren_mul(split.coeff, RenScalar::of_complex(term.dim, atom.coeff));
                expand_linear_factors(split, out);
            }
            return;
        }
    }
    out.push_back(term);
}

void canonicalize_term(NormalTerm& t) {
    std::sort(t.creations.begin(), t.creations.end(), [](const Creation& a, const Creation& b) {
        if (a.fermion_index != b.fermion_index) return a.fermion_index < b.fermion_index;
        return Symbol::compare(a.profile, b.profile) < 0;
    });
    std::sort(t.potentials.begin(), t.potentials.end(),
              [](const PotentialFactor& a, const PotentialFactor& b) {
                  if (a.kind != b.kind) return a.kind < b.kind;
                  return Symbol::compare(a.profile, b.profile) < 0;
              });
    if (t.dressing_all && t.dressing_all->is_zero()) t.dressing_all.reset();
    if (t.dressing_first && t.dressing_first->is_zero()) t.dressing_first.reset();
    // plain complex multipliers live in the eRen coefficient
    if (t.scalars.is_scalar()) {
        Complex c = t.scalars.scalar_value();
        if (c != Complex(1.0, 0.0))
            t.coeff = eren_mul(t.coeff, RenScalar::of_complex(t.dim, c));
        t.scalars = RenPolynomial::one(t.dim);
    }
}

} // namespace

DressedState::DressedState(int dim, std::vector<NormalTerm> terms) : dim_(dim) {
    std::vector<NormalTerm> expanded;
    for (const auto& t : terms) expand_linear_factors(t, expanded);
    terms = std::move(expanded);
    for (auto& t : terms) canonicalize_term(t);
    std::sort(terms.begin(), terms.end(), [](const NormalTerm& a, const NormalTerm& b) {
        return NormalTerm::compare_word(a, b) < 0;
    });
    // merge identical words: by equal scalar polynomial first (coefficients
    // add in the field), then by equal coefficient (polynomials add)
    for (auto& t : terms) {
        bool merged = false;
        for (auto it = terms_.rbegin();
             it != terms_.rend() && NormalTerm::compare_word(*it, t) == 0; ++it) {
            if (it->scalars == t.scalars) {
                it->coeff = eren_add(it->coeff, t.coeff);
                merged = true;
                break;
            }
            if (eren_equal(it->coeff, t.coeff, 0.0) == EqVerdict::EqualSymbolic) {
                it->scalars = poly_add(it->scalars, t.scalars);
                merged = true;
                break;
            }
        }
        if (!merged) terms_.push_back(std::move(t));
    }
    std::erase_if(terms_, [](NormalTerm& t) {
        canonicalize_term(t);
        return t.coeff.is_zero() || t.scalars.is_zero();
    });
}

StateSpace DressedState::space() const {
    for (const auto& t : terms_)
        if (t.space() == StateSpace::Extended) return StateSpace::Extended;
    return StateSpace::Core;
}

std::string DressedState::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) out += "\n+ ";
        out += terms_[i].str();
    }
    return out;
}

DressedState operator*(const RenScalar& c, const DressedState& s) {
    std::vector<NormalTerm> terms = s.terms_;
    for (auto& t : terms) t.coeff = eren_mul(c, t.coeff);
    return DressedState(s.dim_, std::move(terms));
}

RenIntegral dressing_exponent(int dim, int fermions, const Symbol& s, const Symbol& phi) {
    RenIntegral r(dim);
    if (!s.is_zero()) {
        r = ren_add(r, ren_scale(0.5 * (fermions - 1), RenIntegral::pair(s, s)));
        if (!phi.is_zero()) {
            // Im<s,phi> = (<s,phi> - <phi,s>)/(2i)
            RenIntegral im = ren_scale(Complex(0.0, -0.5),
                                       ren_add(RenIntegral::pair(s, phi),
                                               ren_neg(RenIntegral::pair(phi, s))));
            r = ren_add(r, im);
        }
    }
    Symbol tot = s + phi;
    if (!tot.is_zero()) r = ren_add(r, ren_scale(0.5, RenIntegral::pair(tot, tot)));
    return r;
}

DressedState make_coherent(int dim, const BaseState& base, const std::optional<Symbol>& s,
                           const std::optional<Symbol>& phi) {
    Symbol s_sym = s.value_or(Symbol::zero(dim));
    Symbol phi_sym = phi.value_or(Symbol::zero(dim));
    if (!phi_sym.is_zero() &&
        classify(RenIntegral::pair(phi_sym, phi_sym)) != Convergence::Convergent)
        throw std::domain_error("first-fermion dressing profile is not square integrable");
    NormalTerm t = bare_term(dim, base);
    RenIntegral expo = dressing_exponent(dim, base.max_fermions, s_sym, phi_sym);
    t.coeff = RenScalar::exp_ren(ren_neg(expo));
    if (!s_sym.is_zero()) t.dressing_all = s_sym;
    if (!phi_sym.is_zero()) t.dressing_first = phi_sym;
    return DressedState(dim, {t});
}

DressedState apply_H0(const DressedState& state, const Symbol& theta, const Symbol& omega) {
    auto check = [](const Symbol& s, const char* label) {
        if (s.is_zero()) return;
        ScalingReport rep = scaling(s);
        if (!rep.exact || rep.beta < Degree(Rational(0)) || rep.m < Degree(Rational(0)))
            throw std::invalid_argument(std::string(label) +
                                        " must scale exactly with nonnegative degrees");
    };
    check(theta, "theta");
    check(omega, "omega");
    std::vector<NormalTerm> out;
    for (const auto& t : state.terms()) {
        if (t.word_only_vacuum() && theta.is_zero()) continue; // dGamma_y(omega) kills the vacuum
        NormalTerm marked = t;
        marked.h0.push_back({theta, omega});
        out.push_back(std::move(marked));
    }
    return DressedState(state.dim(), std::move(out));
}

namespace {

void require_no_pending_h0(const NormalTerm& t, const char* op) {
    if (!t.h0.empty())
        throw std::domain_error(std::string(op) +
                                " does not commute with a pending free-energy marker");
}

// A(v) applied to a single creation-free term.
void apply_A_dressed(std::vector<NormalTerm>& out, const NormalTerm& t, const Symbol& v) {
    int dim = t.dim;
    int M = t.base.max_fermions;
    Symbol s = t.dressing_all.value_or(Symbol::zero(dim));
    Symbol phi = t.dressing_first.value_or(Symbol::zero(dim));
    if (s.is_zero() && phi.is_zero()) return; // annihilation kills the boson vacuum
    RenIntegral scalar(dim);
    if (!s.is_zero()) scalar = ren_add(scalar, ren_scale(M, RenIntegral::pair(v, s)));
    if (!phi.is_zero()) scalar = ren_add(scalar, RenIntegral::pair(v, phi));
    if (!scalar.is_zero()) {
        NormalTerm ts = t;
        ts.scalars = poly_mul(ts.scalars, RenPolynomial::factor(scalar));
        out.push_back(std::move(ts));
    }
    if (M >= 2 && !phi.is_zero()) {
        NormalTerm tv = t;
        tv.potentials.push_back({PotentialFactor::FirstPair, conjugate(v) * phi});
        out.push_back(std::move(tv));
    }
    if (M >= 2 && !s.is_zero()) {
        NormalTerm tv = t;
        tv.potentials.push_back({PotentialFactor::AllPairs, conjugate(v) * s});
        out.push_back(std::move(tv));
    }
}

void apply_A_term(std::vector<NormalTerm>& out, const NormalTerm& t, const Symbol& v) {
    require_no_pending_h0(t, "apply_A");
    if (t.creations.empty()) {
        apply_A_dressed(out, t, v);
        return;
    }
    // commute past one creation:
    // A(v) Adag1(phi) X = Adag1(phi) A(v) X + <v,phi> X + V1(v* phi) X
    const Creation c = t.creations.front();
    if (c.fermion_index != 1)
        throw std::domain_error("apply_A supports first-fermion creations only");
    NormalTerm rest = t;
    rest.creations.erase(rest.creations.begin());

    std::vector<NormalTerm> inner;
    apply_A_term(inner, rest, v);
    for (auto& r : inner) {
        r.creations.insert(r.creations.begin(), c);
        out.push_back(std::move(r));
    }
    NormalTerm ts = rest;
    ts.scalars = poly_mul(ts.scalars, RenPolynomial::factor(RenIntegral::pair(v, c.profile)));
    out.push_back(std::move(ts));
    if (t.base.max_fermions >= 2) {
        NormalTerm tv = rest;
        tv.potentials.push_back({PotentialFactor::FirstPair, conjugate(v) * c.profile});
        out.push_back(std::move(tv));
    }
}

} // namespace

DressedState apply_A(const DressedState& state, const Symbol& v) {
    std::vector<NormalTerm> out;
    for (const auto& t : state.terms()) apply_A_term(out, t, v);
    return DressedState(state.dim(), std::move(out));
}

DressedState apply_Adagger_first(const DressedState& state, const Symbol& v) {
    if (v.is_zero()) return DressedState::zero(state.dim());
    std::vector<NormalTerm> out;
    for (const auto& t : state.terms()) {
        require_no_pending_h0(t, "apply_Adagger_first");
        NormalTerm tc = t;
        tc.creations.push_back({1, v, symbol_compact(v)});
        out.push_back(std::move(tc));
    }
    return DressedState(state.dim(), std::move(out));
}

DressedState apply_Einfty_counterterm(const DressedState& state, const Symbol& v,
                                      const Symbol& omega) {
    Symbol s_model = -(v * reciprocal(omega));
    std::vector<NormalTerm> out;
    for (const auto& t : state.terms()) {
        require_no_pending_h0(t, "apply_Einfty");
        NormalTerm ts = t;
        RenIntegral scalar =
            ren_scale(-t.base.max_fermions, RenIntegral::pair(v, s_model));
        ts.scalars = poly_mul(ts.scalars, RenPolynomial::factor(scalar));
        out.push_back(std::move(ts));
    }
    return DressedState(state.dim(), std::move(out));
}

namespace {

// Divergence class of a term's coefficient: the exponent of the leading
// numerator exponential.
RenIntegral coeff_class(const NormalTerm& t) {
    if (t.coeff.num().is_zero()) return RenIntegral(t.dim);
    return t.coeff.num().terms()[0].exponent;
}

} // namespace

DressedState add_states(const DressedState& a, const DressedState& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.dim() != b.dim()) throw std::invalid_argument("adding states of different dimension");
    std::vector<NormalTerm> terms = a.terms();
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    for (std::size_t i = 1; i < terms.size(); ++i) {
        RenIntegral c0 = coeff_class(terms[0]);
        RenIntegral ci = coeff_class(terms[i]);
        if (same_class(c0, ci) != EqVerdict::EqualSymbolic) {
            RenIntegral diff = ren_add(c0, ren_neg(ci));
            throw std::domain_error(
                "cannot add states of different renormalization classes; divergent difference " +
                diff.str());
        }
    }
    return DressedState(a.dim(), std::move(terms));
}

bool states_equal(const DressedState& a, const DressedState& b, double tol) {
    if (a.terms().size() != b.terms().size()) return false;
    for (std::size_t i = 0; i < a.terms().size(); ++i) {
        const NormalTerm& ta = a.terms()[i];
        const NormalTerm& tb = b.terms()[i];
        if (NormalTerm::compare_word(ta, tb) != 0) return false;
        if (!(ta.scalars == tb.scalars)) return false;
        if (eren_equal(ta.coeff, tb.coeff, tol) == EqVerdict::NotEqual) return false;
    }
    return true;
}

RenScalar inner_coherent(const Symbol& phi1, const Symbol& phi2) {
    RenIntegral expo = ren_scale(-0.5, ren_add(RenIntegral::pair(phi1, phi1),
                                               RenIntegral::pair(phi2, phi2)));
    expo = ren_add(expo, RenIntegral::pair(phi1, phi2));
    return RenScalar::exp_ren(expo);
}

} // namespace fockren
