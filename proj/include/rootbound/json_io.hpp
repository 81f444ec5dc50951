#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "rootbound/fuzz.hpp"

namespace rootbound {

using json = nlohmann::json;

/// Non-finite reals have no JSON number form; infinity is written as the
/// string "inf" (shows up as the lambda of the last deflation level and as
/// the separation of a single-cluster root set).
inline json real_to_json(Real x) {
  if (std::isinf(x)) return json(x > 0 ? "inf" : "-inf");
  return json(x);
}

/// Extended-range bound values: a plain number while the value fits a
/// normal double, the string "inf" for the unconstrained lambda, and a
/// decimal string like "1.8345e-11158" once the inductive collapse leaves
/// double range.
inline json to_json(const BoundValue& v) {
  if (v.is_infinite()) return json("inf");
  const double d = v.as_double();
  if (d >= std::numeric_limits<double>::min() && std::isfinite(d)) return json(d);
  return json(v.to_decimal_string());
}

inline json to_json(const Scalar& s) { return json::array({s.real(), s.imag()}); }

inline json to_json(const RootSequence& roots) {
  json arr = json::array();
  for (const Scalar& r : roots) arr.push_back(to_json(r));
  return arr;
}

inline json to_json(const Polynomial& p) {
  return json{{"coeffs", to_json(p.coeffs())}};
}

inline json to_json(const RootClusters& rc) {
  json arr = json::array();
  for (const RootCluster& c : rc.clusters)
    arr.push_back(json{{"center", to_json(c.center)}, {"mult", c.multiplicity}});
  return arr;
}

inline json to_json(const AlignmentReport& rep) {
  return json{{"counts", rep.counts},
              {"aligned", rep.aligned},
              {"balls_disjoint", rep.balls_disjoint},
              {"permutation", rep.permutation},
              {"max_displacement", rep.max_displacement}};
}

inline json to_json(const DeltaCertificate& cert) {
  json trace = json::array();
  for (const TraceLevel& lvl : cert.trace)
    trace.push_back(json{{"deflated_degree", lvl.deflated_degree},
                         {"zeta", to_json(lvl.zeta)},
                         {"kappa", to_json(lvl.kappa)},
                         {"lambda", to_json(lvl.lambda)},
                         {"delta_1", to_json(lvl.delta_1)}});
  return json{{"epsilon", cert.epsilon},
              {"delta_sup", to_json(cert.delta_sup)},
              {"method", std::string(to_string(cert.method))},
              {"trace", trace}};
}

inline json to_json(const FuzzReport& rep) {
  json config{{"theorem", std::string(to_string(rep.theorem))},
              {"epsilon", rep.epsilon},
              {"safety", rep.safety},
              {"slack", rep.slack},
              {"delta_used", to_json(rep.delta_used)},
              {"certificate", to_json(rep.certificate)},
              {"poly", json{{"coeffs", to_json(rep.poly)}}}};
  json out{{"trials", rep.trials},
           {"violations", rep.violations},
           {"worst_margin", rep.worst_margin},
           {"seed", rep.seed},
           {"config", config}};
  out["empirical_delta_sup"] = rep.empirical_delta_sup
                                   ? json(*rep.empirical_delta_sup)
                                   : json(nullptr);
  return out;
}

inline Scalar scalar_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("scalar: expected [re, im]");
  return {j[0].get<Real>(), j[1].get<Real>()};
}

inline RootSequence roots_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("roots: expected an array");
  RootSequence out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(scalar_from_json(e));
  return out;
}

inline Polynomial polynomial_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs"))
    throw std::invalid_argument("polynomial: expected {\"coeffs\": [[re, im], ...]}");
  return Polynomial(roots_from_json(j.at("coeffs")));
}

}  // namespace rootbound
