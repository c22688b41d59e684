#include "fockren/config.hpp"

#include <fstream>
#include <sstream>

namespace fockren {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

} // namespace

std::map<std::string, std::string> parse_config(const std::string& text) {
    std::map<std::string, std::string> cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == '[') continue; // section headers are cosmetic
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        std::size_t hash = value.find(" #");
        if (hash != std::string::npos) value = trim(value.substr(0, hash));
        cfg[key] = unquote(value);
    }
    return cfg;
}

std::map<std::string, std::string> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

ModelSpec model_from_config(const std::map<std::string, std::string>& cfg) {
    auto get = [&](const std::string& key, const std::string& fallback) {
        auto it = cfg.find(key);
        return it == cfg.end() ? fallback : it->second;
    };
    ModelSpec m;
    m.name = get("name", "custom");
    m.d = std::stoi(get("d", "3"));
    m.theta = parse_symbol(get("theta", "0"), m.d);
    m.omega = parse_symbol(get("omega", "pow(1)"), m.d);
    m.v = parse_symbol(get("v", "0"), m.d);
    m.theta1 = parse_symbol(get("theta1", "0"), m.d);
    if (cfg.count("published_beta_theta") || cfg.count("published_m_theta")) {
        m.published_theta_degrees =
            std::make_pair(Rational::parse(get("published_beta_theta", "0")),
                           Rational::parse(get("published_m_theta", "0")));
    }
    return m;
}

ModelSpec resolve_model(const std::string& name_or_path) {
    if (auto preset = find_preset(name_or_path)) return *preset;
    return model_from_config(load_config(name_or_path));
}

OracleConfig oracle_from_config(const std::map<std::string, std::string>& cfg) {
    auto get = [&](const std::string& key, const std::string& fallback) {
        auto it = cfg.find(key);
        return it == cfg.end() ? fallback : it->second;
    };
    OracleConfig o;
    o.modes = std::stoi(get("oracle.modes", "8"));
    o.n_max = std::stoi(get("oracle.nmax", "10"));
    o.lo = std::stod(get("oracle.lo", "0.25"));
    o.hi = std::stod(get("oracle.hi", "4.0"));
    o.fermions = std::stoi(get("oracle.fermions", "0"));
    o.fermion_sites = std::stoi(get("oracle.fermion_sites", "0"));
    o.pairs = std::stoi(get("oracle.pairs", "20"));
    o.seed = static_cast<unsigned>(std::stoul(get("oracle.seed", "20240901")));
    o.serial = get("oracle.serial", "false") == "true";
    return o;
}

} // namespace fockren
