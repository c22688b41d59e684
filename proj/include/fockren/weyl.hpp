#pragma once

#include "fockren/states.hpp"

namespace fockren {

// Finite combination sum_i c_i W(s_i) with field coefficients, reduced by
// the Weyl relations so every summand carries exactly one displacement.
struct WeylTerm {
    RenScalar coeff;
    Symbol label; // the s of W(s); the identity is W(0)
};

class WeylWord {
public:
    WeylWord() = default;
    explicit WeylWord(int dim) : dim_(dim) {}
    WeylWord(int dim, std::vector<WeylTerm> terms);

    static WeylWord identity(int dim);
    static WeylWord displacement(const Symbol& s, RenScalar coeff);
    static WeylWord displacement(const Symbol& s);

    int dim() const { return dim_; }
    const std::vector<WeylTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::string str() const;

private:
    int dim_ = 3;
    std::vector<WeylTerm> terms_;
};

// <s1,s2> - <s2,s1> as a formal integral (2i Im<s1,s2>).
RenIntegral symplectic(const Symbol& s1, const Symbol& s2);

// W(s1) W(s2) = e^{-(i/2) sigma(s1,s2)} W(s1+s2)
WeylWord weyl_mul(const WeylWord& a, const WeylWord& b);
// W(s)* = W(-s) with conjugated coefficients
WeylWord weyl_adjoint(const WeylWord& w);

bool weyl_equal(const WeylWord& a, const WeylWord& b, double tol = 1e-9);

// Apply the word to a state in the dressing orbit; each W(s) is pushed
// through the creation factors and merged into the existing displacement
// with the Weyl phase and the change of wave-function normalization.
DressedState represent(const WeylWord& w, const DressedState& state);

} // namespace fockren
