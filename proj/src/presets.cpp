#include "fockren/model.hpp"

#include <stdexcept>

namespace fockren {

Symbol ModelSpec::dressing() const {
    return -(v * reciprocal(omega));
}

void ModelSpec::validate(bool allow_windowed_v) const {
    if (omega.is_zero()) throw std::invalid_argument(name + ": omega must be nonzero");
    if (!omega.single_term())
        throw std::invalid_argument(name + ": omega must be a single term so -v/omega exists");
    auto check_dispersion = [&](const Symbol& s, const char* label) {
        if (s.is_zero()) return;
        ScalingReport rep = scaling(s);
        if (!rep.exact)
            throw std::invalid_argument(name + ": " + label + " must have exact scaling");
        if (rep.beta < Degree(Rational(0)) || rep.m < Degree(Rational(0)))
            throw std::invalid_argument(name + ": " + label +
                                        " needs nonnegative scaling degrees (no pole at 0)");
    };
    check_dispersion(theta, "theta");
    check_dispersion(omega, "omega");
    check_dispersion(theta1, "theta1");
    if (v.is_zero()) return;
    if (!v.single_term())
        throw std::invalid_argument(name + ": v must be a single term so -v/omega exists");
    if (!allow_windowed_v && v.terms()[0].window)
        throw std::invalid_argument(name + ": windowed form factor only allowed for cutoff models");
}

namespace {

ModelSpec make(const std::string& name, int d, const std::string& theta,
               const std::string& omega, const std::string& v, const std::string& theta1) {
    ModelSpec m;
    m.name = name;
    m.d = d;
    m.theta = parse_symbol(theta, d);
    m.omega = parse_symbol(omega, d);
    m.v = parse_symbol(v, d);
    m.theta1 = parse_symbol(theta1, d);
    return m;
}

std::vector<ModelSpec> build_presets() {
    std::vector<ModelSpec> out;
    out.push_back(make("nelson-massless", 3, "0", "pow(1)", "pow(-1/2)", "0.5*pow(2)"));
    out.push_back(make("nelson-massive", 3, "0", "masspow(1,1)", "pow(-1/2)", "0.5*pow(2)"));
    {
        ModelSpec m = make("froehlich", 3, "0", "1", "pow(-1)", "0.5*pow(2)");
        // the published table prints (beta, m) = (2, 0) for this row
        m.published_theta_degrees = std::make_pair(Rational(2), Rational(0));
        out.push_back(m);
    }
    out.push_back(make("pauli-fierz", 3, "0", "pow(1)", "pow(-1/2)", "0.5*pow(2)"));
    out.push_back(make("dipole", 3, "0", "pow(1)", "pow(1/2)", "0.5*pow(2)"));
    // Coulomb-scaled potential with pseudo-relativistic fermion dispersion
    out.push_back(make("pseudo-relativistic-coulomb", 3, "0", "pow(1)", "pow(-1/2)",
                       "masspow(1,1)"));
    // cutoff model for the numerical checks: d=1, everything L^2 on the grid
    out.push_back(make("nelson-windowed", 1, "0", "masspow(1,1)",
                       "0.1*pow(-1/2)*window(0.25,4)", "0.5*pow(2)"));
    for (auto& m : out) m.validate(m.name == "nelson-windowed");
    return out;
}

} // namespace

const std::vector<ModelSpec>& preset_models() {
    static const std::vector<ModelSpec> presets = build_presets();
    return presets;
}

std::optional<ModelSpec> find_preset(const std::string& name) {
    for (const auto& m : preset_models())
        if (m.name == name) return m;
    return std::nullopt;
}

} // namespace fockren
