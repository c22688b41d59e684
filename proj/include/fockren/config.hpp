#pragma once

#include <map>

#include "fockren/model.hpp"
#include "fockren/oracle.hpp"

namespace fockren {

// Flat key = value files with # comments; expression values use the symbol
// mini-language. Unquoted and double-quoted strings are equivalent.
std::map<std::string, std::string> parse_config(const std::string& text);
std::map<std::string, std::string> load_config(const std::string& path);

ModelSpec model_from_config(const std::map<std::string, std::string>& cfg);

// Resolves either a preset name or a config file path.
ModelSpec resolve_model(const std::string& name_or_path);

struct OracleConfig {
    int modes = 8;
    int n_max = 10;
    double lo = 0.25;
    double hi = 4.0;
    int fermions = 0;
    int fermion_sites = 0;
    int pairs = 20;
    unsigned seed = 20240901;
    bool serial = false;
};

OracleConfig oracle_from_config(const std::map<std::string, std::string>& cfg);

} // namespace fockren
