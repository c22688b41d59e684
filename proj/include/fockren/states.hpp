#pragma once

#include <vector>

#include "fockren/eren.hpp"

namespace fockren {

// States are intensional: operator words in normal form. Pointwise values
// exist only through the truncated-grid oracle.

enum class StateSpace { Core, Extended };
const char* to_string(StateSpace s);

// Fermion wave function tensor boson vacuum. Carries support metadata only;
// identities that need compactness or collision avoidance check the flags.
struct BaseState {
    std::string label = "psi";
    int max_fermions = 1;
    double support_radius = std::numeric_limits<double>::infinity();
    bool avoids_collisions = false;

    bool compact_support() const { return std::isfinite(support_radius); }
    static int compare(const BaseState& a, const BaseState& b);
};

// One first-fermion creation factor.
struct Creation {
    int fermion_index = 1;
    Symbol profile;
    bool compact_support = false;
};

// Momentum-exchange pair potential. AllPairs sums over j != j', FirstPair
// over partners j' >= 2 of the first fermion. Both vanish on one fermion.
struct PotentialFactor {
    enum Kind { AllPairs, FirstPair } kind = AllPairs;
    Symbol profile;

    // a compactly supported profile keeps the state in the core space
    bool compact_profile() const;
};

// Deferred multiplication by a free energy sum; consumed by the pullback
// rewrite rules. inner means the marker acts between the dressing and the
// base (the conjugated position produced by the mass renormalization).
struct H0Marker {
    Symbol theta;
    Symbol omega;
    bool inner = false;
};

// coeff * scalars * creations * potentials * h0? * W(s) W1(phi) base
struct NormalTerm {
    RenScalar coeff;
    RenPolynomial scalars;
    std::vector<H0Marker> h0;
    std::vector<Creation> creations;
    std::vector<PotentialFactor> potentials;
    std::optional<Symbol> dressing_all;   // s
    std::optional<Symbol> dressing_first; // phi, must have finite norm
    BaseState base;
    int dim = 3;

    bool word_only_vacuum() const {
        return creations.empty() && !dressing_all && !dressing_first;
    }
    // order/equality on everything except coeff and scalars
    static int compare_word(const NormalTerm& a, const NormalTerm& b);
    StateSpace space() const;
    std::string str() const;
};

NormalTerm bare_term(int dim, const BaseState& base);

class DressedState {
public:
    DressedState() = default;
    explicit DressedState(int dim) : dim_(dim) {}
    DressedState(int dim, std::vector<NormalTerm> terms);

    static DressedState zero(int dim) { return DressedState(dim); }

    int dim() const { return dim_; }
    const std::vector<NormalTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    StateSpace space() const;
    std::string str() const;

    friend DressedState operator*(const RenScalar& c, const DressedState& s);

private:
    int dim_ = 3;
    std::vector<NormalTerm> terms_;
};

// W(s) W1(phi) base with the wave-function renormalization coefficient
// e^{-r}, r = (M-1)|s|^2/2 + Im<s,phi> + |s+phi|^2/2.
DressedState make_coherent(int dim, const BaseState& base, const std::optional<Symbol>& s,
                           const std::optional<Symbol>& phi);

// The renormalization exponent r above, as a formal integral.
RenIntegral dressing_exponent(int dim, int fermions, const Symbol& s, const Symbol& phi);

DressedState apply_H0(const DressedState& state, const Symbol& theta, const Symbol& omega);
DressedState apply_A(const DressedState& state, const Symbol& v);
DressedState apply_Adagger_first(const DressedState& state, const Symbol& v);
// The self-energy counterterm: adds -M<v,-v/omega> times each term.
DressedState apply_Einfty_counterterm(const DressedState& state, const Symbol& v,
                                      const Symbol& omega);

// Checked addition: all resulting terms must carry coefficients of one
// renormalization class, otherwise the divergent difference is reported.
DressedState add_states(const DressedState& a, const DressedState& b);

// e^{-(|p1|^2+|p2|^2)/2} e^{<p1,p2>}
RenScalar inner_coherent(const Symbol& phi1, const Symbol& phi2);

// Term-by-term comparison of canonical forms; coefficients compared as
// field elements within tol.
bool states_equal(const DressedState& a, const DressedState& b, double tol = 1e-9);

} // namespace fockren
