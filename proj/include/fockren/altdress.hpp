#pragma once

#include "fockren/eren.hpp"
#include "fockren/oracle.hpp"
#include "fockren/pullback.hpp"

namespace fockren {

// Formal sector calculus for the raising operator X = H0^{-1} Adag: words
// X^k applied to an injected amplitude of a fixed sector, truncated at
// n_max. Coefficients stay integers, so all identities here are exact.
struct SectorTerm {
    long long coeff = 0;
    int power = 0;  // the k of X^k
    int origin = 0; // sector of the injected amplitude; the word lives on origin+power
};

class SectorState {
public:
    explicit SectorState(int n_max) : n_max_(n_max) {}
    SectorState(int n_max, std::vector<SectorTerm> terms);

    static SectorState inject(int n_max, int sector);

    int n_max() const { return n_max_; }
    const std::vector<SectorTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::string str() const;

    friend bool operator==(const SectorState& a, const SectorState& b);
    friend bool operator!=(const SectorState& a, const SectorState& b) { return !(a == b); }

private:
    int n_max_ = 0;
    std::vector<SectorTerm> terms_;
};

// raise once: X state (words leaving the truncation are dropped)
SectorState sector_raise(const SectorState& state);
// (1 + X) state
SectorState wibc_apply(const SectorState& state);
// Neumann series sum_k (-X)^k state, exact per sector
SectorState wibc_inverse(const SectorState& state);
// exp(-X) state; per sector the series terminates after n_max+1 terms.
// Coefficients pick up 1/k!, so this one returns rational weights.
struct GlimmSeriesTerm {
    double coeff = 0.0;
    int power = 0;
    int origin = 0;
};
std::vector<GlimmSeriesTerm> glimm_series(int n_max, int sector);

// The abstract-boundary-condition split H = S*S + T.
struct IbcDecomposition {
    std::string s_factor;      // H0^{1/2} (1 + H0^{-1} Adag)
    std::string s_star_factor; // (1 + A H0^{-1}) H0^{1/2}
    std::string t_factor;      // -A H0^{-1} Adag - E
    RenIntegral t_scalar;      // divergent scalar of A H0^{-1} Adag per fermion
    Convergence t_class = Convergence::Convergent;
    std::vector<LedgerEntry> ledger; // E is chosen to cancel t_scalar exactly
};

IbcDecomposition ibc_decompose(const ModelSpec& model);

// Glimm normalization constant, adapted to the Yukawa dressing as <s,s>.
RenIntegral glimm_lambda(const ModelSpec& model);

struct GlimmState {
    RenScalar prefactor; // e^{-Lambda/2}
    StateSpace tag = StateSpace::Core;
    std::vector<GlimmSeriesTerm> series;
};

GlimmState glimm_T_apply(int n_max, int sector, const ModelSpec& model);

// Numeric checks on the truncated grid. theta must be strictly positive.
OracleReport check_ibc_bijectivity(const ModelSpec& model, const GridSpec& grid,
                                   bool parallel = true);
OracleReport check_glimm_inverse(const ModelSpec& model, const GridSpec& grid,
                                 bool parallel = true);

} // namespace fockren
