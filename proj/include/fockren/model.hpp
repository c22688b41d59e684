#pragma once

#include <optional>
#include <string>

#include "fockren/symbol.hpp"

namespace fockren {

// A Yukawa-type model: dispersions, form factor, and the fermion dispersion
// restored by the mass renormalization operator. The bare theta is zero for
// every preset; the renormalized theta1 is what the classifier sees.
struct ModelSpec {
    std::string name;
    int d = 3;
    Symbol theta;  // bare fermion dispersion
    Symbol omega;  // boson dispersion
    Symbol v;      // form factor
    Symbol theta1; // renormalized fermion dispersion

    // Printed UV/IR fermion degrees for the model table when they differ
    // from the symbol-derived ones (kept verbatim from the published table).
    std::optional<std::pair<Rational, Rational>> published_theta_degrees; // (beta, m)

    // s = -v/omega
    Symbol dressing() const;

    // Throws std::invalid_argument when dispersions are not exact-scaling
    // with nonnegative degrees or when the dressing is not derivable.
    // Cutoff models carry a windowed form factor; pass allow_windowed_v.
    void validate(bool allow_windowed_v = false) const;
};

// Registry of shipped models.
const std::vector<ModelSpec>& preset_models();
std::optional<ModelSpec> find_preset(const std::string& name);

} // namespace fockren
