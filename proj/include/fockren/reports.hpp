#pragma once

#include <string>

#include "fockren/altdress.hpp"
#include "fockren/sacheck.hpp"

namespace fockren {

// Deterministic JSON renderings of the machine-readable reports. Identical
// inputs produce byte-identical output.
std::string renint_json(const RenIntegral& r);
std::string renscalar_json(const RenScalar& c);

std::string verdict_report(const ModelSpec& model, const Verdict& verdict);
std::string pullback_report(const ModelSpec& model, const PulledHamiltonian& h);
std::string oracle_report(const OracleReport& r);
std::string oracle_reports(const std::vector<OracleReport>& rs);
std::string ibc_report(const ModelSpec& model, const IbcDecomposition& dec,
                       const OracleReport* numeric);
std::string glimm_report(const ModelSpec& model, const OracleReport* numeric);

// Round-trip for the decomposition record.
IbcDecomposition ibc_from_json(const std::string& text);

} // namespace fockren
