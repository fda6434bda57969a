#pragma once

#include "optwit/certify.hpp"

#include <json.hpp>

namespace optwit {

inline nlohmann::json rational_json(const Rational& r) { return {{"num", r.numerator()}, {"den", r.denominator()}}; }
inline nlohmann::json rational_json(const Dyadic& d) { return rational_json(d.to_rational()); }

inline constexpr const char* kNotApplicableDecomposable = "not-applicable: decomposable case";

inline nlohmann::json to_json(const CertReport& r) {
  nlohmann::json j;
  j["N"] = r.n;
  j["witness_min_eig"] = r.witness_min_eig;
  j["negative_eig_count"] = r.negative_eig_count;
  j["optimality_rank"] = r.optimality_rank;
  j["max_zero_violation"] = r.max_zero_violation;
  if (r.detection_threshold) {
    j["detection_threshold"] = {{"lower", rational_json(r.detection_threshold->lower)},
                                {"lower_inclusive", false},
                                {"upper", rational_json(r.detection_threshold->upper)},
                                {"upper_inclusive", true}};
  } else {
    j["detection_threshold"] = kNotApplicableDecomposable;
  }
  if (r.indecomposability_point) {
    j["indecomposability_point"] = {{"t", rational_json(r.indecomposability_point->t)},
                                    {"witness_value", rational_json(r.indecomposability_point->witness_value)},
                                    {"ppt_min_eig", r.indecomposability_point->ppt_min_eig}};
  } else {
    j["indecomposability_point"] = kNotApplicableDecomposable;
  }
  j["spa"] = {{"p_star", rational_json(r.spa.p_star)},
              {"spa_min_eig", r.spa.spa_min_eig},
              {"spa_trace", to_double(r.spa.spa_trace)},
              {"spa_ppt_min_eig", r.spa.spa_ppt_min_eig},
              {"corollary_holds", r.spa.corollary_holds}};
  return j;
}

inline nlohmann::json to_json(const ProbeResult& p, int n, int restarts, int iters, std::uint64_t seed) {
  auto vec = [](const CVector& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& z : v) a.push_back({z.real(), z.imag()});
    return a;
  };
  return {{"N", n},         {"restarts", restarts},   {"iters", iters},     {"seed", seed},
          {"min_value", p.min_value}, {"best_restart", p.best_restart}, {"psi", vec(p.psi)}, {"phi", vec(p.phi)}};
}

}  // namespace optwit
