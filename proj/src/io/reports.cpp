#include "hetstrip/io/reports.hpp"

#include <cstdio>

namespace hetstrip::io {

using nlohmann::ordered_json;

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ordered_json trail_json(const std::vector<double>& trail, size_t cap = 200) {
    ordered_json arr = ordered_json::array();
    if (trail.empty()) return arr;
    if (trail.size() <= cap) {
        for (double v : trail) arr.push_back(v);
        return arr;
    }
    for (size_t k = 0; k < cap; ++k) arr.push_back(trail[k * (trail.size() - 1) / (cap - 1)]);
    return arr;
}

}  // namespace

ordered_json solve_report_json(const solver::SolveReport& rep) {
    ordered_json j;
    j["converged"] = rep.converged;
    j["termination"] = solver::termination_name(rep.reason);
    j["iterations"] = rep.iterations;
    j["final_grad_norm"] = rep.final_grad_norm;
    j["energy"] = {{"total", rep.energy.total},
                   {"gradient_part", rep.energy.gradient_part},
                   {"potential_part", rep.energy.potential_part},
                   {"outside_window", rep.energy.outside_window}};
    ordered_json cells = ordered_json::array();
    for (const auto& [cell, value] : rep.energy.per_cell)
        cells.push_back({{"j", cell}, {"a_j", value}});
    j["per_cell"] = cells;
    j["anchor_cell"] = rep.anchor_cell;
    j["energy_trail"] = trail_json(rep.energy_trail);
    j["grad_norm_trail"] = trail_json(rep.grad_norm_trail);
    return j;
}

ordered_json verify_report_json(const verify::VerifyReport& r, bool with_odd) {
    ordered_json j;
    j["gradient_bound"] = {{"max_grad", r.max_grad},
                           {"sqrt_L", r.sqrt_L},
                           {"margin", r.gradient_margin},
                           {"pass", r.gradient_bound_pass}};
    j["heteroclinic"] = {{"tprime", r.tprime},
                         {"err_left", r.err_left},
                         {"err_right", r.err_right},
                         {"tol", r.endpoint_tol},
                         {"pass", r.heteroclinic_pass}};
    j["strict_bounds"] = {{"min_above_alpha", r.min_above_alpha},
                          {"min_below_beta", r.min_below_beta},
                          {"pass", r.strict_bounds_pass}};
    j["symmetry"] = {{"y_mirror_residual", r.y_symmetry_residual},
                     {"odd_residual", r.odd_residual}};
    j["residuals"] = {{"truncated", r.residual_truncated},
                      {"true_curvature", r.residual_true_curvature},
                      {"agreement", r.residual_agreement},
                      {"consistent", r.residuals_consistent}};
    if (with_odd) {
        j["odd_class"] = {{"center_value", r.center_value},
                          {"min_positive_x", r.min_positive_x},
                          {"max_on_positive_x", r.max_on_positive_x},
                          {"pass", r.odd_pass}};
    }
    j["pass"] = r.overall(with_odd);
    return j;
}

ordered_json sweep_table_json(const verify::SweepTable& tab, const std::string& param_name) {
    ordered_json j;
    ordered_json rows = ordered_json::array();
    for (const auto& r : tab.rows)
        rows.push_back({{param_name, r.param},
                        {"energy", r.energy},
                        {"max_grad", r.max_grad},
                        {"err_left", r.err_left},
                        {"err_right", r.err_right},
                        {"converged", r.converged},
                        {"pass", r.pass}});
    j["rows"] = rows;
    if (tab.delta_hat)
        j["delta_hat"] = *tab.delta_hat;
    else
        j["delta_hat"] = "below smallest sampled beta";
    if (tab.reference_energy != 0.0) j["reference_energy"] = tab.reference_energy;
    j["monotone"] = tab.monotone;
    j["pass"] = tab.pass;
    return j;
}

std::string sweep_table_csv(const verify::SweepTable& tab, const std::string& param_name) {
    std::string s;
    if (tab.delta_hat)
        s += "# delta_hat=" + g17(*tab.delta_hat) + "\n";
    else
        s += "# delta_hat=below smallest sampled beta\n";
    if (tab.reference_energy != 0.0) s += "# reference_energy=" + g17(tab.reference_energy) + "\n";
    s += "# monotone=" + std::string(tab.monotone ? "1" : "0") +
         ", pass=" + std::string(tab.pass ? "1" : "0") + "\n";
    s += param_name + ",energy,max_grad,err_left,err_right,converged,pass\n";
    for (const auto& r : tab.rows) {
        s += g17(r.param) + "," + g17(r.energy) + "," + g17(r.max_grad) + "," + g17(r.err_left) +
             "," + g17(r.err_right) + "," + (r.converged ? "1" : "0") + "," + (r.pass ? "1" : "0") +
             "\n";
    }
    return s;
}

std::string verify_report_csv(const verify::VerifyReport& r) {
    std::string s = "metric,value,pass\n";
    s += "max_grad," + g17(r.max_grad) + "," + (r.gradient_bound_pass ? "1" : "0") + "\n";
    s += "err_left," + g17(r.err_left) + "," + (r.heteroclinic_pass ? "1" : "0") + "\n";
    s += "err_right," + g17(r.err_right) + "," + (r.heteroclinic_pass ? "1" : "0") + "\n";
    s += "min_above_alpha," + g17(r.min_above_alpha) + "," + (r.strict_bounds_pass ? "1" : "0") + "\n";
    s += "min_below_beta," + g17(r.min_below_beta) + "," + (r.strict_bounds_pass ? "1" : "0") + "\n";
    s += "y_mirror_residual," + g17(r.y_symmetry_residual) + ",\n";
    s += "odd_residual," + g17(r.odd_residual) + ",\n";
    s += "residual_agreement," + g17(r.residual_agreement) + "," +
         (r.residuals_consistent ? "1" : "0") + "\n";
    return s;
}

}  // namespace hetstrip::io
