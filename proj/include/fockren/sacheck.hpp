#pragma once

#include <vector>

#include "fockren/model.hpp"

namespace fockren {

// Momentum-space scaling of the pulled-back pair potential -v*v/omega, plus
// the position-space degrees where the Fourier wedge applies.
struct PotentialScaling {
    Rational beta_V;
    Rational m_V;
    std::optional<Rational> alpha_V; // -d - m_V, valid for -d < m_V < 0
    std::optional<Rational> delta_V; // -d - beta_V, valid for -d < beta_V < 0
};

PotentialScaling potential_scaling(const ModelSpec& model);

enum class SAVerdict { EssentiallySelfAdjoint, SelfAdjointExtensionExists, NotCovered };
const char* to_string(SAVerdict v);

struct Reason {
    std::string condition;
    bool pass = false;
    bool informational = false; // recorded but not part of the verdict
};

struct Verdict {
    SAVerdict verdict = SAVerdict::NotCovered;
    std::vector<Reason> reasons;
};

// Strict-inequality evaluation in exact rationals. m_theta = 2 and = 1 hit
// the essential self-adjointness criteria; other fermion dispersions fall
// back to the symmetric-extension test.
Verdict classify_degrees(int d, const Rational& m_theta, const Rational& beta_V,
                         const Rational& m_V, bool sing_supp_origin, bool symmetric);

// Uses theta1 (the dispersion of the renormalized Hamiltonian) for m_theta.
Verdict classify_model(const ModelSpec& model);

struct TableRow {
    std::string name;
    std::string group; // "exact-coupling" or "p-dependent"
    Rational beta_theta, beta_omega, beta_v, beta_V;
    Rational m_theta, m_omega, m_v, m_V;
};

std::vector<TableRow> model_table(const std::vector<ModelSpec>& presets);
std::string table_csv(const std::vector<TableRow>& rows);

// Verdict grid over (d, beta_V, m_V) with exact rational grid coordinates;
// boundary points fail the strict inequalities and report NotCovered.
struct RegionOptions {
    int d_lo = 1;
    int d_hi = 5;
    Rational lo{-3};
    Rational hi{2};
    Rational resolution{1, 2};
};

std::string region_csv(const Rational& m_theta, const RegionOptions& opt);

} // namespace fockren
