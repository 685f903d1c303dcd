#include "hetstrip/cli/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "hetstrip/io/field_csv.hpp"

namespace hetstrip::cli {

using nlohmann::json;

namespace {

const json* find(const json& root, const std::string& dotted) {
    const json* cur = &root;
    size_t pos = 0;
    while (pos < dotted.size()) {
        const size_t dot = dotted.find('.', pos);
        const std::string key = dotted.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (!cur->is_object() || !cur->contains(key)) return nullptr;
        cur = &(*cur)[key];
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    return cur;
}

double need_number(const json& root, const std::string& path) {
    const json* v = find(root, path);
    if (!v) throw ConfigError(path, "missing required value");
    if (!v->is_number()) throw ConfigError(path, "must be a number");
    return v->get<double>();
}

double opt_number(const json& root, const std::string& path, double dflt) {
    const json* v = find(root, path);
    if (!v) return dflt;
    if (!v->is_number()) throw ConfigError(path, "must be a number");
    return v->get<double>();
}

long opt_integer(const json& root, const std::string& path, long dflt) {
    const json* v = find(root, path);
    if (!v) return dflt;
    if (!v->is_number_integer()) throw ConfigError(path, "must be an integer");
    return v->get<long>();
}

std::string need_string(const json& root, const std::string& path) {
    const json* v = find(root, path);
    if (!v) throw ConfigError(path, "missing required value");
    if (!v->is_string()) throw ConfigError(path, "must be a string");
    return v->get<std::string>();
}

std::string opt_string(const json& root, const std::string& path, const std::string& dflt) {
    const json* v = find(root, path);
    if (!v) return dflt;
    if (!v->is_string()) throw ConfigError(path, "must be a string");
    return v->get<std::string>();
}

bool opt_bool(const json& root, const std::string& path, bool dflt) {
    const json* v = find(root, path);
    if (!v) return dflt;
    if (!v->is_boolean()) throw ConfigError(path, "must be a boolean");
    return v->get<bool>();
}

std::vector<double> opt_array(const json& root, const std::string& path) {
    const json* v = find(root, path);
    if (!v) return {};
    if (!v->is_array()) throw ConfigError(path, "must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : *v) {
        if (!e.is_number()) throw ConfigError(path, "must be an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError("(document)", std::string("invalid JSON: ") + e.what());
    }

    RunConfig c;
    c.T = need_number(root, "domain.T");
    c.nx = static_cast<int>(need_number(root, "domain.nx"));
    c.ny = static_cast<int>(need_number(root, "domain.ny"));
    if (!(c.T > 0.0)) throw ConfigError("domain.T", "must be > 0");
    if (c.nx < 2 || c.nx % 2) throw ConfigError("domain.nx", "must be even and >= 2");
    if (c.ny < 4) throw ConfigError("domain.ny", "must be >= 4");

    c.operator_kind = need_string(root, "operator.kind");
    if (c.operator_kind == "truncated-mean-curvature") {
        c.L = need_number(root, "operator.L");
        if (!(c.L > 0.0)) throw ConfigError("operator.L", "must be > 0");
    } else if (c.operator_kind == "power-p") {
        c.p = need_number(root, "operator.p");
        if (!(c.p > 1.0)) throw ConfigError("operator.p", "must be > 1");
    } else {
        throw ConfigError("operator.kind", "must be 'truncated-mean-curvature' or 'power-p'");
    }

    c.pot_family = need_string(root, "potential.family");
    static const std::set<std::string> families{"ginzburg-landau", "sine-gordon", "phi-coupled"};
    if (!families.count(c.pot_family))
        throw ConfigError("potential.family",
                          "must be 'ginzburg-landau', 'sine-gordon' or 'phi-coupled'");
    c.alpha = need_number(root, "potential.alpha");
    c.beta = need_number(root, "potential.beta");
    if (!(c.alpha < c.beta)) throw ConfigError("potential.alpha", "requires alpha < beta");
    if (c.pot_family == "sine-gordon" && c.alpha != -c.beta)
        throw ConfigError("potential.alpha", "sine-gordon requires alpha = -beta");
    if (!(c.T > std::max(std::fabs(c.alpha), std::fabs(c.beta))))
        throw ConfigError("domain.T", "must exceed max{|alpha|,|beta|}");

    c.coeff_class = static_cast<int>(need_number(root, "coefficient.class"));
    if (c.coeff_class < 1 || c.coeff_class > 4)
        throw ConfigError("coefficient.class", "must be 1..4");
    c.coeff_name = need_string(root, "coefficient.name");
    if (const json* pv = find(root, "coefficient.params")) {
        if (!pv->is_object()) throw ConfigError("coefficient.params", "must be an object");
        for (auto it = pv->begin(); it != pv->end(); ++it) {
            if (!it.value().is_number())
                throw ConfigError("coefficient.params." + it.key(), "must be a number");
            c.coeff_params[it.key()] = it.value().get<double>();
        }
    }
    c.eps = opt_number(root, "coefficient.eps", 1.0);
    if (!(c.eps > 0.0)) throw ConfigError("coefficient.eps", "must be > 0");
    if (c.coeff_class != 3 && c.eps != 1.0)
        throw ConfigError("coefficient.eps", "eps scaling applies to class 3 only");

    c.solver.max_iter = opt_integer(root, "solver.maxIter", c.solver.max_iter);
    if (c.solver.max_iter < 0) throw ConfigError("solver.maxIter", "must be >= 0");
    c.solver.tol_grad = opt_number(root, "solver.tolGrad", c.solver.tol_grad);
    if (!(c.solver.tol_grad > 0.0)) throw ConfigError("solver.tolGrad", "must be > 0");
    c.solver.tol_energy = opt_number(root, "solver.tolEnergy", c.solver.tol_energy);
    if (c.solver.tol_energy < 0.0) throw ConfigError("solver.tolEnergy", "must be >= 0");
    c.solver.line_search.shrink =
        opt_number(root, "solver.lineSearch.shrink", c.solver.line_search.shrink);
    if (!(c.solver.line_search.shrink > 0.0 && c.solver.line_search.shrink < 1.0))
        throw ConfigError("solver.lineSearch.shrink", "must lie in (0,1)");
    c.solver.line_search.decrease =
        opt_number(root, "solver.lineSearch.decrease", c.solver.line_search.decrease);
    if (!(c.solver.line_search.decrease > 0.0 && c.solver.line_search.decrease < 1.0))
        throw ConfigError("solver.lineSearch.decrease", "must lie in (0,1)");
    c.solver.symmetrize_every =
        static_cast<int>(opt_integer(root, "solver.symmetrizeEvery", c.solver.symmetrize_every));
    if (c.solver.symmetrize_every < 0)
        throw ConfigError("solver.symmetrizeEvery", "must be >= 0");
    c.solver.odd_constraint = opt_bool(root, "solver.oddConstraint", c.solver.odd_constraint);
    if (c.solver.odd_constraint && c.alpha != -c.beta)
        throw ConfigError("solver.oddConstraint", "requires alpha = -beta");
    c.solver.projection = opt_bool(root, "solver.projection", c.solver.projection);

    c.verify.tol = opt_number(root, "verify.tol", c.verify.tol);
    if (!(c.verify.tol > 0.0)) throw ConfigError("verify.tol", "must be > 0");
    c.verify.tprime_fraction =
        opt_number(root, "verify.TprimeFraction", c.verify.tprime_fraction);
    if (!(c.verify.tprime_fraction > 0.0 && c.verify.tprime_fraction < 1.0))
        throw ConfigError("verify.TprimeFraction", "must lie in (0,1)");
    c.verify.check_odd = c.solver.odd_constraint;

    c.sweep_betas = opt_array(root, "sweep.betas");
    for (size_t i = 0; i < c.sweep_betas.size(); ++i) {
        if (!(c.sweep_betas[i] > 0.0)) throw ConfigError("sweep.betas", "must be positive");
        if (i > 0 && !(c.sweep_betas[i] < c.sweep_betas[i - 1]))
            throw ConfigError("sweep.betas", "must be strictly decreasing");
    }
    c.sweep_L = opt_number(root, "sweep.L", c.L);
    c.sweep_eps = opt_array(root, "sweep.epsilons");
    for (size_t i = 1; i < c.sweep_eps.size(); ++i)
        if (!(c.sweep_eps[i] < c.sweep_eps[i - 1]))
            throw ConfigError("sweep.epsilons", "must be strictly decreasing");

    c.out_dir = opt_string(root, "output.directory", c.out_dir);
    if (const json* fv = find(root, "output.formats")) {
        if (!fv->is_array()) throw ConfigError("output.formats", "must be an array");
        c.fmt_csv = false;
        c.fmt_json = false;
        for (const auto& e : *fv) {
            const std::string s = e.get<std::string>();
            if (s == "csv")
                c.fmt_csv = true;
            else if (s == "json")
                c.fmt_json = true;
            else
                throw ConfigError("output.formats", "unknown format '" + s + "'");
        }
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::string text;
    try {
        text = io::read_text(path);
    } catch (const std::exception& e) {
        throw ConfigError("(file)", e.what());
    }
    return parse_config(text);
}

strip::Grid RunConfig::make_grid() const { return strip::Grid(T, nx, ny, alpha, beta); }

orlicz::NFunction RunConfig::make_nfunction() const {
    if (operator_kind == "power-p") return orlicz::build_power(p);
    return orlicz::build_truncated(L);
}

pot::Potential RunConfig::make_potential() const {
    if (pot_family == "sine-gordon")
        return pot::build_potential(pot::PotFamily::sine_gordon, alpha, beta);
    if (pot_family == "phi-coupled") {
        auto nf = std::make_shared<orlicz::NFunction>(make_nfunction());
        return pot::build_potential(pot::PotFamily::phi_coupled, alpha, beta, nf);
    }
    return pot::build_potential(pot::PotFamily::ginzburg_landau, alpha, beta);
}

coeff::CoefficientField RunConfig::make_coefficient() const {
    coeff::CoeffParams p2;
    p2.name = coeff_name;
    p2.params = coeff_params;
    p2.eps = eps;
    try {
        return coeff::build_coefficient(coeff_class, p2);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("coefficient", e.what());
    }
}

}  // namespace hetstrip::cli
