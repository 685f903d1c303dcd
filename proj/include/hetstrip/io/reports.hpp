#pragma once

// JSON/CSV serialization for solver and verification reports.  JSON numbers
// use the library's exact shortest round-trip form; CSV floats use 17
// significant digits.  Nothing time- or host-dependent is ever written, so
// identical runs produce identical bytes.

#include <string>

#include <json.hpp>

#include "hetstrip/solver/solver.hpp"
#include "hetstrip/verify/verify.hpp"

namespace hetstrip::io {

nlohmann::ordered_json solve_report_json(const solver::SolveReport& rep);
nlohmann::ordered_json verify_report_json(const verify::VerifyReport& rep, bool with_odd);
nlohmann::ordered_json sweep_table_json(const verify::SweepTable& tab, const std::string& param_name);

std::string sweep_table_csv(const verify::SweepTable& tab, const std::string& param_name);
std::string verify_report_csv(const verify::VerifyReport& rep);

}  // namespace hetstrip::io
