#include "numrange/bounds.hpp"

#include <cmath>

namespace numrange {

namespace {

double need(const nlohmann::json& params, const char* key) {
    if (!params.contains(key))
        throw DomainError(std::string("theorem_bound: missing parameter '") + key + "'");
    return params.at(key).get<double>();
}

double err_small_core(const nlohmann::json& params) {
    double m = need(params, "m");
    double n = need(params, "n");
    double beta = need(params, "beta");
    double log_arg;
    if (params.contains("alpha_norm2") && params.contains("alpha_min2")) {
        double norm2 = params.at("alpha_norm2").get<double>();
        double min2 = params.at("alpha_min2").get<double>();
        log_arg = M_E * m * norm2 / (6.0 * min2);
    } else {
        double alpha = need(params, "alpha");
        double kappa = need(params, "kappa");
        log_arg = std::pow(n, 2.0 + alpha) * kappa * kappa;
    }
    double eps2 = 2.0 * std::log(M_E * n) / std::pow(n, beta / 2.0);
    return ((6.0 / m) * std::log(log_arg) + eps2) / (1.0 - eps2);
}

}  // namespace

double theorem_bound(const std::string& name, const nlohmann::json& params) {
    if (name == "lemma_single_eig") {
        double m = need(params, "m");
        double b_norm2 = need(params, "b_norm2");
        double proj2 = need(params, "proj2");
        double diam = need(params, "diam");
        return (6.0 / m) * std::log(M_E * m * b_norm2 / (6.0 * proj2)) * diam;
    }
    if (name == "thm_main") {
        double n = need(params, "n");
        double m = need(params, "m");
        double alpha = need(params, "alpha");
        double diam = need(params, "diam");
        return 6.0 * (2.0 + alpha) * std::log(n) / m * diam;
    }
    if (name == "thm_circle_upper") {
        double n = need(params, "n");
        double m = need(params, "m");
        double alpha = need(params, "alpha");
        double ln = std::log(n);
        return (2.0 + alpha) * (2.0 + alpha) * ln * ln / (16.0 * m * m);
    }
    if (name == "thm_nonnormal") {
        double n = need(params, "n");
        double m = need(params, "m");
        double alpha = need(params, "alpha");
        double kappa = need(params, "kappa");
        double diam = need(params, "diam");
        double main = (6.0 * kappa * kappa / m) *
                      std::log(std::pow(n, 2.0 + alpha) * kappa * kappa);
        return (main + 4.0 * kappa * (kappa - 1.0)) * diam;
    }
    if (name == "cor_errsmall") {
        double diam = need(params, "diam");
        return err_small_core(params) * diam;
    }
    if (name == "thm_eigenhull") {
        double diam = need(params, "diam");
        double n = need(params, "n");
        double gamma = need(params, "gamma");
        double ng = std::pow(n, gamma);
        double sampling = (M_PI / ng) * std::tan(2.0 * M_PI / ng);
        return (err_small_core(params) + sampling) * diam;
    }
    throw DomainError("theorem_bound: unknown bound '" + name + "'");
}

}  // namespace numrange
