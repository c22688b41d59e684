#include "fockren/sacheck.hpp"

#include <stdexcept>

namespace fockren {

const char* to_string(SAVerdict v) {
    switch (v) {
        case SAVerdict::EssentiallySelfAdjoint: return "EssentiallySelfAdjoint";
        case SAVerdict::SelfAdjointExtensionExists: return "SelfAdjointExtensionExists";
        default: return "NotCovered";
    }
}

namespace {

Rational finite_degree(const Degree& deg, const std::string& what) {
    if (!deg.finite()) throw std::invalid_argument(what + " has no finite scaling degree");
    return deg.value;
}

} // namespace

PotentialScaling potential_scaling(const ModelSpec& model) {
    if (model.v.is_zero()) throw std::invalid_argument("potential scaling needs a nonzero v");
    ScalingReport rv = scaling(model.v);
    ScalingReport rw = scaling(model.omega);
    if (!rv.exact || !rw.exact)
        throw std::invalid_argument("potential scaling needs exact-scaling v and omega");
    PotentialScaling ps;
    Rational beta_v = finite_degree(rv.beta, "v");
    Rational m_v = finite_degree(rv.m, "v");
    Rational beta_w = finite_degree(rw.beta, "omega");
    Rational m_w = finite_degree(rw.m, "omega");
    ps.beta_V = Rational(2) * beta_v - beta_w;
    ps.m_V = Rational(2) * m_v - m_w;
    int d = model.d;
    if (Rational(-d) < ps.m_V && ps.m_V < Rational(0)) ps.alpha_V = Rational(-d) - ps.m_V;
    if (Rational(-d) < ps.beta_V && ps.beta_V < Rational(0)) ps.delta_V = Rational(-d) - ps.beta_V;
    return ps;
}

Verdict classify_degrees(int d, const Rational& m_theta, const Rational& beta_V,
                         const Rational& m_V, bool sing_supp_origin, bool symmetric) {
    Verdict out;
    auto note = [&](std::string cond, bool pass, bool info = false) {
        out.reasons.push_back({std::move(cond), pass, info});
        return pass;
    };

    bool esa_case = m_theta == Rational(2) || m_theta == Rational(1);
    bool ir_ok = note("beta_V > -d  [" + beta_V.str() + " > " + Rational(-d).str() + "]",
                      beta_V > Rational(-d));
    bool ss_ok = note("sing supp(V) within {0}", sing_supp_origin, esa_case);
    bool sym_ok = note("symmetry v(k) = v(-k)", symmetric, esa_case);
    bool ext_ok = ir_ok && ss_ok && sym_ok;

    if (m_theta == Rational(2)) {
        note("m_theta == 2 (non-relativistic criterion)", true);
        Rational bound = d < 2 ? Rational(0) : Rational(2 - d);
        bool uv_ok = note("m_V < " + bound.str() + "  [" + m_V.str() + " < " + bound.str() + "]",
                          m_V < bound);
        out.verdict = (ir_ok && uv_ok) ? SAVerdict::EssentiallySelfAdjoint : SAVerdict::NotCovered;
        return out;
    }
    if (m_theta == Rational(1)) {
        note("m_theta == 1 (pseudo-relativistic criterion)", true);
        Rational bound = Rational(1 - d);
        bool uv_ok = note("m_V < " + bound.str() + "  [" + m_V.str() + " < " + bound.str() + "]",
                          m_V < bound);
        out.verdict = (ir_ok && uv_ok) ? SAVerdict::EssentiallySelfAdjoint : SAVerdict::NotCovered;
        return out;
    }
    note("m_theta not in {1,2}: self-adjoint extension test only", true);
    out.verdict = ext_ok ? SAVerdict::SelfAdjointExtensionExists : SAVerdict::NotCovered;
    return out;
}

Verdict classify_model(const ModelSpec& model) {
    PotentialScaling ps = potential_scaling(model);
    Rational m_theta(0);
    if (!model.theta1.is_zero()) {
        ScalingReport rt = scaling(model.theta1);
        if (!rt.exact) throw std::invalid_argument("theta1 must have exact scaling");
        m_theta = finite_degree(rt.m, "theta1");
    }
    // radial power/mass-power transforms are singular at most at the origin
    bool sing_supp = ps.beta_V > Rational(-model.d);
    // radial symbols satisfy v(k) = v(-k) identically
    bool symmetric = true;
    Verdict out = classify_degrees(model.d, m_theta, ps.beta_V, ps.m_V, sing_supp, symmetric);
    return out;
}

std::vector<TableRow> model_table(const std::vector<ModelSpec>& presets) {
    std::vector<TableRow> rows;
    for (const auto& m : presets) {
        if (m.v.is_zero()) continue;
        TableRow row;
        row.name = m.name;
        row.group = (m.name == "pauli-fierz" || m.name == "dipole") ? "p-dependent"
                                                                    : "exact-coupling";
        PotentialScaling ps = potential_scaling(m);
        ScalingReport rv = scaling(m.v);
        ScalingReport rw = scaling(m.omega);
        row.beta_v = finite_degree(rv.beta, "v");
        row.m_v = finite_degree(rv.m, "v");
        row.beta_omega = finite_degree(rw.beta, "omega");
        row.m_omega = finite_degree(rw.m, "omega");
        row.beta_V = ps.beta_V;
        row.m_V = ps.m_V;
        if (m.published_theta_degrees) {
            row.beta_theta = m.published_theta_degrees->first;
            row.m_theta = m.published_theta_degrees->second;
        } else if (!m.theta1.is_zero()) {
            ScalingReport rt = scaling(m.theta1);
            row.beta_theta = finite_degree(rt.beta, "theta1");
            row.m_theta = finite_degree(rt.m, "theta1");
        } else {
            row.beta_theta = Rational(0);
            row.m_theta = Rational(0);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string table_csv(const std::vector<TableRow>& rows) {
    std::string out = "model,group,beta_theta,beta_omega,beta_v,beta_V,m_theta,m_omega,m_v,m_V\n";
    for (const auto& r : rows) {
        out += r.name + "," + r.group + "," + r.beta_theta.str() + "," + r.beta_omega.str() +
               "," + r.beta_v.str() + "," + r.beta_V.str() + "," + r.m_theta.str() + "," +
               r.m_omega.str() + "," + r.m_v.str() + "," + r.m_V.str() + "\n";
    }
    return out;
}

std::string region_csv(const Rational& m_theta, const RegionOptions& opt) {
    if (!(Rational(0) < opt.resolution)) throw std::invalid_argument("resolution must be > 0");
    std::string out = "d,beta_V,m_V,verdict\n";
    for (int d = opt.d_lo; d <= opt.d_hi; ++d) {
        for (Rational beta = opt.lo; beta <= opt.hi; beta += opt.resolution) {
            for (Rational m = opt.lo; m <= opt.hi; m += opt.resolution) {
                Verdict v = classify_degrees(d, m_theta, beta, m, beta > Rational(-d), true);
                out += std::to_string(d) + "," + beta.str() + "," + m.str() + "," +
                       to_string(v.verdict) + "\n";
            }
        }
    }
    return out;
}

} // namespace fockren
