#include "fockren/weyl.hpp"

#include <algorithm>

namespace fockren {

WeylWord::WeylWord(int dim, std::vector<WeylTerm> terms) : dim_(dim) {
    std::sort(terms.begin(), terms.end(), [](const WeylTerm& a, const WeylTerm& b) {
        return Symbol::compare(a.label, b.label) < 0;
    });
    for (auto& t : terms) {
        if (!terms_.empty() && Symbol::compare(terms_.back().label, t.label) == 0) {
            terms_.back().coeff = eren_add(terms_.back().coeff, t.coeff);
        } else {
            terms_.push_back(std::move(t));
        }
    }
    std::erase_if(terms_, [](const WeylTerm& t) { return t.coeff.is_zero(); });
}

WeylWord WeylWord::identity(int dim) {
    return WeylWord(dim, {WeylTerm{RenScalar::one(dim), Symbol::zero(dim)}});
}

WeylWord WeylWord::displacement(const Symbol& s, RenScalar coeff) {
    return WeylWord(s.dim(), {WeylTerm{std::move(coeff), s}});
}

WeylWord WeylWord::displacement(const Symbol& s) {
    return displacement(s, RenScalar::one(s.dim()));
}

std::string WeylWord::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) out += " + ";
        out += "(" + terms_[i].coeff.str() + ")*W(" + terms_[i].label.str() + ")";
    }
    return out;
}

RenIntegral symplectic(const Symbol& s1, const Symbol& s2) {
    return ren_add(RenIntegral::pair(s1, s2), ren_neg(RenIntegral::pair(s2, s1)));
}

namespace {

// e^{-(i/2) sigma(s1,s2)}
RenScalar weyl_phase(const Symbol& s1, const Symbol& s2) {
    return RenScalar::exp_ren(ren_scale(Complex(0.0, -0.5), symplectic(s1, s2)));
}

} // namespace

WeylWord weyl_mul(const WeylWord& a, const WeylWord& b) {
    std::vector<WeylTerm> terms;
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            WeylTerm t;
            t.coeff = eren_mul(eren_mul(ta.coeff, tb.coeff), weyl_phase(ta.label, tb.label));
            t.label = ta.label + tb.label;
            terms.push_back(std::move(t));
        }
    }
    return WeylWord(a.dim(), std::move(terms));
}

WeylWord weyl_adjoint(const WeylWord& w) {
    std::vector<WeylTerm> terms;
    for (const auto& t : w.terms()) terms.push_back({t.coeff.conj(), -t.label});
    return WeylWord(w.dim(), std::move(terms));
}

bool weyl_equal(const WeylWord& a, const WeylWord& b, double tol) {
    if (a.terms().size() != b.terms().size()) return false;
    for (std::size_t i = 0; i < a.terms().size(); ++i) {
        if (Symbol::compare(a.terms()[i].label, b.terms()[i].label) != 0) return false;
        if (eren_equal(a.terms()[i].coeff, b.terms()[i].coeff, tol) == EqVerdict::NotEqual)
            return false;
    }
    return true;
}

namespace {

// W(s) applied to one normal-form term: push through the creation factors
// (each splits into kept creation / scalar / pair potential), then merge the
// displacement into the existing dressing.
void represent_displacement(std::vector<NormalTerm>& out, const Symbol& s_w,
                            const RenScalar& c_w, const NormalTerm& term) {
    int dim = term.dim;
    if (!term.h0.empty())
        throw std::domain_error("represent does not commute with a pending free-energy marker");
    if (s_w.is_zero()) {
        NormalTerm t = term;
        t.coeff = eren_mul(c_w, t.coeff);
        out.push_back(std::move(t));
        return;
    }
    Symbol s0 = term.dressing_all.value_or(Symbol::zero(dim));
    Symbol phi = term.dressing_first.value_or(Symbol::zero(dim));
    Symbol s1 = s_w + s0;
    int M = term.base.max_fermions;

    RenScalar factor = c_w;
    if (!s0.is_zero())
        factor = eren_mul(factor,
                          RenScalar::exp_ren(ren_scale(Complex(0.0, -0.5), symplectic(s_w, s0))));
    // change of the wave-function normalization between the old and new word
    RenIntegral delta = ren_add(dressing_exponent(dim, M, s0, phi),
                                ren_neg(dressing_exponent(dim, M, s1, phi)));
    factor = eren_mul(factor, RenScalar::exp_ren(delta));

    // three-way split per creation: W(s) Adag1(v) = (Adag1(v) - <v,s> - V1(v*s)) W(s)
    std::vector<NormalTerm> acc;
    NormalTerm seed = term;
    seed.creations.clear();
    seed.coeff = eren_mul(factor, term.coeff);
    if (s1.is_zero()) seed.dressing_all.reset();
    else seed.dressing_all = s1;
    acc.push_back(std::move(seed));
    for (const auto& c : term.creations) {
        if (c.fermion_index != 1)
            throw std::domain_error("represent supports first-fermion creations only");
        std::vector<NormalTerm> next;
        for (const auto& t : acc) {
            NormalTerm keep = t;
            keep.creations.push_back(c);
            next.push_back(std::move(keep));
            NormalTerm scal = t;
            scal.scalars = poly_mul(
                scal.scalars,
                RenPolynomial::factor(ren_scale(-1.0, RenIntegral::pair(c.profile, s_w))));
            next.push_back(std::move(scal));
            if (M >= 2) {
                NormalTerm pot = t;
                pot.potentials.push_back(
                    {PotentialFactor::FirstPair, Complex(-1.0, 0.0) * (conjugate(c.profile) * s_w)});
                next.push_back(std::move(pot));
            }
        }
        acc = std::move(next);
    }
    for (auto& t : acc) out.push_back(std::move(t));
}

} // namespace

DressedState represent(const WeylWord& w, const DressedState& state) {
    std::vector<NormalTerm> out;
    for (const auto& wt : w.terms())
        for (const auto& st : state.terms())
            represent_displacement(out, wt.label, wt.coeff, st);
    return DressedState(state.dim(), std::move(out));
}

} // namespace fockren
