#include "fockren/reports.hpp"

#include "json.hpp"

namespace fockren {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json complex_json(Complex c) { return ordered_json::array({c.real(), c.imag()}); }

ordered_json renint_obj(const RenIntegral& r) {
    ordered_json j;
    j["d"] = r.dim();
    j["offset"] = complex_json(r.offset());
    j["integrand"] = r.integrand().str();
    return j;
}

ordered_json renscalar_obj(const RenScalar& c) {
    auto sum_obj = [](const RenSum& s) {
        ordered_json arr = ordered_json::array();
        for (const auto& t : s.terms()) {
            ordered_json term;
            term["coeff"] = complex_json(t.coeff);
            term["exponent"] = renint_obj(t.exponent);
            arr.push_back(term);
        }
        return arr;
    };
    ordered_json j;
    j["num"] = sum_obj(c.num());
    j["den"] = sum_obj(c.den());
    return j;
}

ordered_json ledger_obj(const std::vector<LedgerEntry>& ledger, int dim) {
    ordered_json arr = ordered_json::array();
    for (const auto& e : ledger) {
        ordered_json entry;
        entry["name"] = e.name;
        entry["value"] = renint_obj(e.value);
        entry["class"] = to_string(classify(e.value));
        arr.push_back(entry);
    }
    ordered_json j;
    j["entries"] = arr;
    RenIntegral sum = ledger_sum(ledger, dim);
    j["sum_divergent_part"] = sum.integrand().str();
    j["closed"] = sum.integrand().is_zero();
    return j;
}

ordered_json oracle_obj(const OracleReport& r) {
    ordered_json j;
    j["check"] = r.check;
    j["params"] = r.params;
    j["deviation"] = r.deviation;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    return j;
}

} // namespace

std::string renint_json(const RenIntegral& r) { return renint_obj(r).dump(2); }
std::string renscalar_json(const RenScalar& c) { return renscalar_obj(c).dump(2); }

std::string verdict_report(const ModelSpec& model, const Verdict& verdict) {
    ordered_json j;
    j["model"] = model.name;
    j["d"] = model.d;
    PotentialScaling ps = potential_scaling(model);
    j["beta_V"] = ps.beta_V.str();
    j["m_V"] = ps.m_V.str();
    if (ps.alpha_V) j["alpha_V"] = ps.alpha_V->str();
    if (ps.delta_V) j["delta_V"] = ps.delta_V->str();
    j["verdict"] = to_string(verdict.verdict);
    ordered_json reasons = ordered_json::array();
    for (const auto& r : verdict.reasons) {
        ordered_json reason;
        reason["condition"] = r.condition;
        reason["pass"] = r.pass;
        reason["informational"] = r.informational;
        reasons.push_back(reason);
    }
    j["reasons"] = reasons;
    return j.dump(2);
}

std::string pullback_report(const ModelSpec& model, const PulledHamiltonian& h) {
    ordered_json j;
    j["model"] = model.name;
    j["fermion_dispersion"] = h.fermion_dispersion.str();
    j["boson_dispersion"] = h.boson_dispersion.str();
    ordered_json pot;
    pot["kind"] = h.potential.kind == PotentialFactor::AllPairs ? "all-pairs" : "first-pair";
    pot["profile"] = h.potential.profile.str();
    j["potential"] = pot;
    j["residual_zero"] = h.residual.is_zero();
    j["residual"] = h.residual.str();
    j["ledger"] = ledger_obj(h.ledger, model.d);
    j["fiber_hessian"] = h.fiber.hessian;
    return j.dump(2);
}

std::string oracle_report(const OracleReport& r) { return oracle_obj(r).dump(2); }

std::string oracle_reports(const std::vector<OracleReport>& rs) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rs) arr.push_back(oracle_obj(r));
    return arr.dump(2);
}

std::string ibc_report(const ModelSpec& model, const IbcDecomposition& dec,
                       const OracleReport* numeric) {
    ordered_json j;
    j["model"] = model.name;
    j["s"] = dec.s_factor;
    j["s_star"] = dec.s_star_factor;
    j["t"] = dec.t_factor;
    j["t_scalar"] = renint_obj(dec.t_scalar);
    j["t_class"] = to_string(dec.t_class);
    j["ledger"] = ledger_obj(dec.ledger, model.d);
    if (numeric) j["numeric"] = oracle_obj(*numeric);
    return j.dump(2);
}

std::string glimm_report(const ModelSpec& model, const OracleReport* numeric) {
    ordered_json j;
    j["model"] = model.name;
    RenIntegral lambda = glimm_lambda(model);
    j["lambda"] = renint_obj(lambda);
    j["lambda_class"] = to_string(classify(lambda));
    j["lambda_positive_cone"] = in_positive_cone(lambda);
    if (numeric) j["numeric"] = oracle_obj(*numeric);
    return j.dump(2);
}

IbcDecomposition ibc_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    IbcDecomposition dec;
    dec.s_factor = j.at("s").get<std::string>();
    dec.s_star_factor = j.at("s_star").get<std::string>();
    dec.t_factor = j.at("t").get<std::string>();
    const auto& ts = j.at("t_scalar");
    int d = ts.at("d").get<int>();
    Complex offset{ts.at("offset")[0].get<double>(), ts.at("offset")[1].get<double>()};
    dec.t_scalar =
        RenIntegral::of(parse_symbol(ts.at("integrand").get<std::string>(), d), offset);
    dec.t_class = classify(dec.t_scalar);
    for (const auto& e : j.at("ledger").at("entries")) {
        const auto& v = e.at("value");
        int dd = v.at("d").get<int>();
        Complex off{v.at("offset")[0].get<double>(), v.at("offset")[1].get<double>()};
        dec.ledger.push_back(
            {e.at("name").get<std::string>(),
             RenIntegral::of(parse_symbol(v.at("integrand").get<std::string>(), dd), off)});
    }
    return dec;
}

} // namespace fockren
