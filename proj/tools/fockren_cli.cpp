#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "fockren/config.hpp"
#include "fockren/reports.hpp"

using namespace fockren;

namespace {

// report path: --out flag, else the FOCKREN_REPORT_PATH override, else stdout
int emit(const std::string& text, const std::string& out_flag) {
    std::string path = out_flag;
    if (path.empty()) {
        if (const char* env = std::getenv("FOCKREN_REPORT_PATH")) path = env;
    }
    if (path.empty()) {
        std::cout << text << "\n";
        return 0;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot write report to " << path << "\n";
        return 2;
    }
    out << text << "\n";
    return 0;
}

std::vector<ModelSpec> select_presets(const std::string& which) {
    if (which == "all") {
        std::vector<ModelSpec> out;
        for (const char* n :
             {"nelson-massless", "nelson-massive", "froehlich", "pauli-fierz", "dipole"})
            out.push_back(*find_preset(n));
        return out;
    }
    std::vector<ModelSpec> out;
    std::size_t start = 0;
    while (start <= which.size()) {
        std::size_t comma = which.find(',', start);
        std::string name = which.substr(start, comma == std::string::npos ? std::string::npos
                                                                          : comma - start);
        if (!name.empty()) out.push_back(resolve_model(name));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

GridSpec grid_from(const OracleConfig& o, int fermions) {
    return GridSpec::gauss(1, o.modes, o.lo, o.hi, o.n_max, fermions,
                           o.fermion_sites > 0 ? o.fermion_sites : 0);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fock-space renormalization calculus"};
    app.require_subcommand(1);

    std::string model_arg = "nelson-massless";
    std::string out_path;
    std::string presets_arg = "all";
    app.add_option("--out", out_path, "write the report to a file instead of stdout");

    auto* classify_cmd = app.add_subcommand("classify", "self-adjointness verdict for a model");
    classify_cmd->add_option("--model", model_arg, "preset name or config file");

    auto* table_cmd = app.add_subcommand("table", "scaling-degree table for preset models");
    table_cmd->add_option("--presets", presets_arg, "'all' or a comma-separated list");

    auto* region_cmd = app.add_subcommand("region", "verdict grid over scaling degrees");
    int mtheta = 2;
    std::string resolution = "1/2";
    RegionOptions ropt;
    region_cmd->add_option("--mtheta", mtheta, "fermion UV degree, 1 or 2")
        ->check(CLI::IsMember({1, 2}));
    region_cmd->add_option("--resolution", resolution, "rational grid step");
    region_cmd->add_option("--dlo", ropt.d_lo, "lowest dimension");
    region_cmd->add_option("--dhi", ropt.d_hi, "highest dimension");

    auto* pullback_cmd = app.add_subcommand("pullback", "dressing pullback report");
    pullback_cmd->add_option("--model", model_arg, "preset name or config file");

    auto* oracle_cmd = app.add_subcommand("oracle", "numerical checks at cutoff scale");
    std::string check = "all";
    OracleConfig ocfg;
    oracle_cmd->add_option("check", check,
                           "overlap | pullthrough | commutator | pullback | all");
    oracle_cmd->add_option("--model", model_arg, "windowed model for the pullback check");
    oracle_cmd->add_option("--nmax", ocfg.n_max, "boson truncation");
    oracle_cmd->add_option("--modes", ocfg.modes, "grid modes");
    oracle_cmd->add_option("--pairs", ocfg.pairs, "random pairs for the overlap suite");
    oracle_cmd->add_option("--seed", ocfg.seed, "random seed");
    oracle_cmd->add_flag("--serial", ocfg.serial, "use the serial reference kernels");

    auto* ibc_cmd = app.add_subcommand("ibc", "boundary-condition dressing report");
    ibc_cmd->add_option("--model", model_arg, "preset name or config file");

    auto* glimm_cmd = app.add_subcommand("glimm", "exponential dressing report");
    glimm_cmd->add_option("--model", model_arg, "preset name or config file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify_cmd->parsed()) {
            ModelSpec model = resolve_model(model_arg);
            return emit(verdict_report(model, classify_model(model)), out_path);
        }
        if (table_cmd->parsed()) {
            auto rows = model_table(select_presets(presets_arg));
            return emit(table_csv(rows), out_path);
        }
        if (region_cmd->parsed()) {
            ropt.resolution = Rational::parse(resolution);
            return emit(region_csv(Rational(mtheta), ropt), out_path);
        }
        if (pullback_cmd->parsed()) {
            ModelSpec model = resolve_model(model_arg);
            PulledHamiltonian h = pullback_full(model);
            int rc = emit(pullback_report(model, h), out_path);
            if (rc) return rc;
            return (h.residual.is_zero() && h.ledger_closed()) ? 0 : 1;
        }
        if (oracle_cmd->parsed()) {
            bool parallel = !ocfg.serial;
            std::vector<OracleReport> reports;
            if (check == "overlap" || check == "all") {
                GridSpec g = grid_from(ocfg, 0);
                reports.push_back(check_overlap_suite(g, ocfg.pairs, ocfg.seed, parallel));
                reports.push_back(check_sector_distribution(
                    g, parse_symbol("0.22*window(0.5,2.5)", 1), parallel));
            }
            if (check == "pullthrough" || check == "all") {
                GridSpec g = GridSpec::gauss(1, 6, ocfg.lo, ocfg.hi,
                                             std::min(ocfg.n_max, 10), 0);
                reports.push_back(check_pullthrough(
                    g, parse_symbol("0.4*pow(1/2)*window(0.5,2.5)", 1),
                    parse_symbol("0.01*window(0.5,2.5)", 1), parallel));
            }
            if (check == "commutator" || check == "all") {
                for (int fermions : {1, 2}) {
                    GridSpec g = GridSpec::gauss(1, 4, ocfg.lo, ocfg.hi, 5, fermions, 5);
                    reports.push_back(check_commutator_potential(
                        g, parse_symbol("0.4*window(0.5,2.5)", 1),
                        parse_symbol("0.3*pow(-1/2)*window(0.5,2.5)", 1), parallel));
                }
            }
            if (check == "pullback" || check == "all") {
                ModelSpec model = resolve_model(
                    model_arg == "nelson-massless" ? "nelson-windowed" : model_arg);
                model.v = Complex(0.2, 0.0) * model.v;
                GridSpec g = GridSpec::gauss(1, 4, 0.25, 4.0, 8, 1, 5);
                reports.push_back(check_pullback_cutoff(model, g, parallel));
                GridSpec cross = GridSpec::gauss(1, 32, 0.25, 4.0, 2, 0);
                reports.push_back(check_selfenergy_cross(model, cross));
            }
            if (reports.empty()) {
                std::cerr << "unknown oracle check: " << check << "\n";
                return 2;
            }
            int rc = emit(oracle_reports(reports), out_path);
            if (rc) return rc;
            for (const auto& r : reports)
                if (!r.pass) return 1;
            return 0;
        }
        if (ibc_cmd->parsed()) {
            ModelSpec model = resolve_model(model_arg);
            if (model.theta.is_zero()) model.theta = parse_symbol("masspow(2,1)", model.d);
            IbcDecomposition dec = ibc_decompose(model);
            OracleReport numeric;
            const OracleReport* numeric_ptr = nullptr;
            if (model.d == 1) {
                GridSpec g = GridSpec::gauss(1, 4, 0.25, 4.0, 8, 1, 4);
                numeric = check_ibc_bijectivity(model, g);
                numeric_ptr = &numeric;
            }
            int rc = emit(ibc_report(model, dec, numeric_ptr), out_path);
            if (rc) return rc;
            return (!numeric_ptr || numeric.pass) ? 0 : 1;
        }
        if (glimm_cmd->parsed()) {
            ModelSpec model = resolve_model(model_arg);
            OracleReport numeric;
            const OracleReport* numeric_ptr = nullptr;
            if (model.d == 1) {
                ModelSpec positive = model;
                if (positive.theta.is_zero())
                    positive.theta = parse_symbol("masspow(2,1)", model.d);
                GridSpec g = GridSpec::gauss(1, 4, 0.25, 4.0, 6, 1, 4);
                numeric = check_glimm_inverse(positive, g);
                numeric_ptr = &numeric;
            }
            int rc = emit(glimm_report(model, numeric_ptr), out_path);
            if (rc) return rc;
            return (!numeric_ptr || numeric.pass) ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
