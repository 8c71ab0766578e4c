#include "ugspec/numeric_config.hpp"

#include "ugspec/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>

#include <json.hpp>

namespace ugspec {

namespace {

std::mutex config_mutex;
NumericConfig global_config;

} // namespace

const NumericConfig &numeric_config() { return global_config; }

void set_numeric_config(const NumericConfig &cfg) {
    std::lock_guard lock(config_mutex);
    global_config = cfg;
}

NumericConfig load_numeric_config(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw PreconditionError("cannot open numeric config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw PreconditionError("numeric config '" + path + "': " + e.what());
    }
    if (!j.is_object())
        throw PreconditionError("numeric config must be a JSON object");

    NumericConfig cfg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto &key = it.key();
        if (!it->is_number())
            throw PreconditionError("numeric config key '" + key + "' is not a number");
        if (key == "residual_tol")
            cfg.residual_tol = it->get<double>();
        else if (key == "aggregate_tol")
            cfg.aggregate_tol = it->get<double>();
        else if (key == "regularity_tol")
            cfg.regularity_tol = it->get<double>();
        else if (key == "zero_tol")
            cfg.zero_tol = it->get<double>();
        else if (key == "net_cap")
            cfg.net_cap = it->get<double>();
        else if (key == "brute_force_budget")
            cfg.brute_force_budget = it->get<double>();
        else if (key == "jacobi_max_sweeps")
            cfg.jacobi_max_sweeps = it->get<int>();
        else
            throw PreconditionError("unknown numeric config key '" + key + "'");
    }
    return cfg;
}

bool load_numeric_config_from_env() {
    const char *path = std::getenv("UGSPEC_NUMERIC_CONFIG");
    if (path == nullptr || *path == '\0')
        return false;
    set_numeric_config(load_numeric_config(path));
    return true;
}

} // namespace ugspec
