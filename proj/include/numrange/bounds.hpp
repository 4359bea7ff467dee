#pragma once

#include <string>

#include <json.hpp>

#include "numrange/types.hpp"

namespace numrange {

// Closed-form error bounds. Every symbol of the cited formula must be
// supplied in params; missing keys raise DomainError. Recognized names:
//   lemma_single_eig : (6/m) ln(e m ||b||^2 / (6 |<b,phi>|^2)) * diam
//   thm_main         : 6 (2+alpha) ln(n) / m * diam
//   thm_circle_upper : (2+alpha)^2 ln^2(n) / (16 m^2)
//   thm_nonnormal    : (6 kappa^2/m) ln(n^(2+alpha) kappa^2) + 4 kappa (kappa-1), * diam
//   cor_errsmall     : ((6/m) ln(n^(2+alpha) kappa^2) + 2 ln(e n)/n^(beta/2))
//                      / (1 - 2 ln(e n)/n^(beta/2)) * diam
//   thm_eigenhull    : cor_errsmall value + (pi/n^gamma) tan(2 pi/n^gamma), * diam
double theorem_bound(const std::string& name, const nlohmann::json& params);

}  // namespace numrange
