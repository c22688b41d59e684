#pragma once

#include <map>

#include "fockren/model.hpp"
#include "fockren/states.hpp"

namespace fockren {

struct LedgerEntry {
    std::string name;
    RenIntegral value;
};

// Sum of all entries, which must vanish symbolically for a closed pullback.
RenIntegral ledger_sum(const std::vector<LedgerEntry>& ledger, int dim);

// res1(phi) = <v,phi> + V1(v* phi)
std::pair<RenIntegral, PotentialFactor> residual_res1(const Symbol& v, const Symbol& phi);

// W(s)* (A(v) - E_inf) W(s) W1(phi) Psi = (res1(phi) + V(v*s)) W1(phi) Psi,
// with the divergent +-M<v,s> pair recorded in the ledger.
DressedState pullback_AE(const ModelSpec& model, const DressedState& state,
                         std::vector<LedgerEntry>* ledger = nullptr);

// W(s)* (H0 + Adag(v)) W(s) W1(phi) Psi = (H0 - res1(phi)) W1(phi) Psi.
// Requires the bare theta to vanish; the general-theta energy-difference
// bookkeeping exists behind allow_general_theta but never claims the
// cancellation (the ledger keeps the unresolved entries).
DressedState pullback_H0Adagger(const ModelSpec& model, const DressedState& state,
                                std::vector<LedgerEntry>* ledger = nullptr,
                                bool allow_general_theta = false);

// Single-emission energy difference omega(k) + theta(|p-k|) - theta(p),
// evaluated collinearly; equals omega(k) when theta vanishes.
double energy_difference(const ModelSpec& model, double p, double k);

struct FiberReport {
    double hessian = 0.0; // second derivative of theta1 at zero momentum
};

struct PulledHamiltonian {
    Symbol fermion_dispersion; // theta1
    Symbol boson_dispersion;   // omega
    PotentialFactor potential; // V with profile -v*v/omega
    DressedState residual;     // zero when the pullback closed
    std::vector<LedgerEntry> ledger;
    FiberReport fiber;
    bool ledger_closed() const;
};

PulledHamiltonian pullback_full(const ModelSpec& model);

// One summand of the dressed-state expansion on the (M, N) sector:
// sigma attaches boson l to fermion sigma[l]; alpha[l] = 1 marks a
// first-fermion boson taken from the phi part of the dressing.
struct ExpandedTerm {
    int fermions = 1;
    std::vector<int> sigma; // 1-based fermion indices, size N
    std::vector<int> alpha; // 0 or 1; 1 only where sigma is 1
    std::vector<bool> consumed; // s-factors removed by attachment detection
    // energy label E1(P) with the recoils of the listed (boson, fermion)
    // attachments included; set by the mass renormalization step
    std::optional<std::vector<std::pair<int, int>>> energy_attachment;

    static int compare(const ExpandedTerm& a, const ExpandedTerm& b);
    std::string str() const;
};

// All sigma/alpha summands of W(s) W1(phi) on the (fermions, bosons) sector.
// with_phi controls whether alpha may take the value 1.
// Throws when the count M^N 2^N exceeds the guard.
std::vector<ExpandedTerm> expand_sigma_alpha(int fermions, int bosons, bool with_phi,
                                             std::size_t guard = 10000);

// Boson-l-to-fermion-j attachment detection: nonzero exactly on summands
// with sigma(l) = j and alpha(l) = 0, with the s(k_l) factor removed.
// base_compact/phi_compact are the domain conditions.
std::optional<ExpandedTerm> alpha_jl(const ExpandedTerm& t, int j, int l, bool base_compact,
                                     bool phi_compact);

// Partial map pi: L -> fermions. Selects exactly the summand matching pi.
std::optional<ExpandedTerm> alpha_pi(const ExpandedTerm& t, const std::map<int, int>& pi,
                                     bool base_compact, bool phi_compact);

// All partial maps {1..bosons} >= L -> {1..fermions}.
std::vector<std::map<int, int>> all_partial_maps(int fermions, int bosons);

// Left route of the intertwining identity: delta-m applied to the expansion
// of W(s) W1(phi) Psi via the pi-attachment detectors.
std::vector<ExpandedTerm> delta_m_expand(int fermions, int bosons, bool with_phi,
                                         bool base_compact, bool phi_compact,
                                         std::size_t guard = 10000);

// Right route: W(s) dGamma_x(theta1) W1(phi) Psi expanded directly.
std::vector<ExpandedTerm> dressed_energy_expand(int fermions, int bosons, bool with_phi,
                                                std::size_t guard = 10000);

// Multiset equality of the two routes.
bool delta_m_intertwines(int fermions, int bosons, bool with_phi, std::size_t guard = 10000);

// State-level mass renormalization on the dressing orbit: requires compact
// base and compact phi, returns W(s) dGamma_x(theta1) ... with the energy
// recorded as an inner marker.
DressedState delta_m_apply(const DressedState& state, const Symbol& theta1);

} // namespace fockren
