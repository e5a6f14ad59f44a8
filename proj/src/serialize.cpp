#include "gibbs/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace gibbs {

namespace {

template <class T>
Json optional_number(const std::optional<T>& v) {
  return v ? number(*v) : Json(nullptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_optional(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

}  // namespace

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

Json to_json(const ExtReal& v) {
  if (v.is_pos_inf()) return "+inf";
  if (v.is_neg_inf()) return "-inf";
  return v.value();
}

Json to_json(const DomainInfo& d) {
  Json j;
  j["alpha"] = std::isinf(d.alpha) ? Json(nullptr) : Json(d.alpha);
  j["boundary_class"] = std::string(to_string(d.boundary_class));
  j["gamma"] = to_json(d.gamma);
  j["gamma_tail_bound"] = number(d.gamma_tail_bound);
  j["f_at_boundary"] = to_json(d.f_at_boundary);
  j["f_at_boundary_tail_bound"] = number(d.f_at_boundary_tail_bound);
  return j;
}

Json to_json(const SeriesEval& e) {
  Json j;
  j["value"] = number(e.value);
  j["derivative_order"] = e.derivative_order;
  j["truncation_index"] = e.truncation_index;
  j["tail_bound"] = number(e.tail_bound);
  j["requested_tol"] = number(e.requested_tol);
  return j;
}

Json to_json(const ConjugateValue& c) {
  Json j;
  j["value"] = to_json(c.value);
  j["regime"] = std::string(to_string(c.regime));
  j["y"] = optional_number(c.attaining_y);
  j["residual"] = number(c.residual);
  j["converged"] = c.converged;
  return j;
}

Json to_json(const Weight& w) {
  Json j;
  if (w.triple) {
    j["triple"] = Json::array({(*w.triple)[0], (*w.triple)[1], (*w.triple)[2]});
  } else {
    j["index"] = w.index;
  }
  j["weight"] = number(w.value);
  return j;
}

namespace {

Json weights_json(const std::vector<Weight>& ws) {
  Json arr = Json::array();
  for (const auto& w : ws) arr.push_back(to_json(w));
  return arr;
}

Json moment_json(const Moment& m) {
  return Json{{"value", number(m.value)}, {"tail_bound", number(m.tail_bound)}};
}

}  // namespace

Json to_json(const GibbsFit& f) {
  Json j;
  j["status"] = std::string(to_string(f.status));
  j["entropy"] = to_json(f.entropy);
  if (!f.reason.empty()) j["reason"] = f.reason;
  j["dual_x"] = optional_number(f.dual_x);
  j["dual_y"] = optional_number(f.dual_y);
  j["converged"] = f.converged;
  j["mass"] = moment_json(f.mass);
  j["energy"] = moment_json(f.energy);
  j["tail_mass_bound"] = number(f.tail_mass_bound);
  j["weights"] = weights_json(f.weights);
  return j;
}

Json to_json(const PlateauWindow& w) {
  Json j;
  j["n"] = w.n;
  j["q"] = w.q;
  j["lambda"] = number(w.lambda);
  j["last_weight"] = number(w.last_weight);
  j["entropy"] = number(w.entropy);
  j["gap"] = number(w.gap);
  j["moment_adjustment"] = number(w.moment_adjustment);
  j["newton_iterations"] = w.newton_iterations;
  return j;
}

Json to_json(const PlateauWitness& w) {
  Json j;
  j["kind"] = "plateau";
  j["u"] = number(w.u);
  j["target"] = number(w.target);
  j["gap"] = number(w.gap);
  j["exact"] = w.exact;
  j["window"] = to_json(w.window);
  j["weights"] = weights_json(w.weights);
  return j;
}

Json to_json(const AlternatingAttainment& a) {
  Json j;
  j["q"] = number(a.q);
  j["convergent"] = a.convergent;
  j["v_bar"] = optional_number(a.v_bar);
  j["tail_bound"] = number(a.tail_bound);
  j["terms"] = a.terms;
  j["rule"] = a.rule;
  return j;
}

Json to_json(const AlternatingWitness& w) {
  Json j;
  j["kind"] = "alternating";
  j["entropy"] = number(w.entropy);
  j["target"] = number(w.target);
  j["gap"] = number(w.gap);
  j["prefix_end"] = w.prefix_end;
  j["m"] = w.m;
  j["u_residual"] = number(w.u_residual);
  j["v_residual"] = number(w.v_residual);
  j["weights"] = weights_json(w.weights);
  return j;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["claim"] = r.claim;
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  Json lhs = Json::array(), rhs = Json::array();
  for (double v : r.lhs) lhs.push_back(number(v));
  for (double v : r.rhs) rhs.push_back(number(v));
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["abs_gap"] = number(r.abs_gap);
  j["rel_gap"] = number(r.rel_gap);
  j["tolerance"] = number(r.tolerance);
  j["passed"] = r.passed;
  Json meta = Json::object();
  for (const auto& [k, v] : r.metadata) meta[k] = number(v);
  j["metadata"] = meta;
  return j;
}

Json to_json(const Certificate& c) {
  Json j;
  j["quantity"] = c.quantity;
  j["y"] = number(c.y);
  j["converges"] = c.converges;
  j["M"] = c.M;
  if (c.converges) {
    j["value"] = number(c.value);
    j["width"] = number(c.width);
  } else {
    j["partial_sum"] = number(c.value);
    j["lower_bound"] = number(c.bound);
  }
  j["bound_form"] = c.bound_form;
  j["consistent"] = c.consistent;
  return j;
}

Json to_json(const Example1Row& r) {
  Json j;
  j["family"] = r.family;
  j["theta_range"] = r.theta_range;
  j["sequence"] = r.sequence;
  j["domain"] = r.domain;
  j["boundary_slope"] = r.boundary_slope;
  j["expected"] = std::string(to_string(r.expected));
  j["computed"] = std::string(to_string(r.computed));
  j["gamma"] = optional_number(r.gamma);
  j["f_at_boundary"] = optional_number(r.f_at_boundary);
  Json certs = Json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  j["certificates"] = certs;
  j["matches"] = r.matches;
  return j;
}

Json to_json(const Example2Row& r) {
  Json j;
  j["x"] = number(r.x);
  j["varsigma"] = r.varsigma;
  j["N"] = r.N;
  j["first"] = number(r.result.first);
  j["second"] = number(r.result.second);
  j["convergent"] = r.result.convergent;
  j["rule"] = r.result.rule;
  if (r.result.reference) {
    j["reference"] = Json::array({number(r.result.reference->first), number(r.result.reference->second)});
  } else {
    j["reference"] = nullptr;
  }
  j["gap"] = optional_number(r.gap);
  j["last_term_log"] = number(r.result.last_term_log);
  return j;
}

Json to_json(const BoxReport& r) {
  Json j;
  j["u"] = number(r.u);
  j["v"] = number(r.v);
  j["kappa"] = number(r.kappa);
  j["region"] = r.region;
  j["h_star"] = to_json(r.h_star);
  j["empty_solution_set"] = r.empty_solution_set;
  if (r.dual) {
    j["dual"] = Json{{"x", number(r.dual->first)}, {"y", number(r.dual->second)}};
  } else {
    j["dual"] = nullptr;
  }
  if (r.grad_at_dual) {
    j["grad_at_dual"] = Json::array({number(r.grad_at_dual->first), number(r.grad_at_dual->second)});
  } else {
    j["grad_at_dual"] = nullptr;
  }
  j["roundtrip_error"] = number(r.roundtrip_error);
  j["fit"] = to_json(r.fit);
  return j;
}

Json document(const std::string& command, const Json& body) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  if (body.is_object()) {
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  } else {
    j["result"] = body;
  }
  return j;
}

std::string dump(const Json& j) { return j.dump(); }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const std::vector<Example1Row>& rows) {
  std::ostringstream os;
  os << "family,theta_range,sequence,domain,boundary_slope,expected,computed,gamma,f_at_boundary,"
        "certificates,matches\n";
  for (const auto& r : rows) {
    std::string certs;
    for (const auto& c : r.certificates) {
      if (!certs.empty()) certs += "; ";
      certs += c.quantity + "(" + format_number(c.y) + ") ";
      if (c.converges) {
        certs += "converges " + format_number(c.value) + " +" + format_number(c.width);
      } else {
        certs += "diverges S_M=" + format_number(c.value) + " >= " + format_number(c.bound) +
                 " M=" + std::to_string(c.M);
      }
    }
    os << csv_field(r.family) << ',' << csv_field(r.theta_range) << ',' << csv_field(r.sequence) << ','
       << csv_field(r.domain) << ',' << csv_field(r.boundary_slope) << ',' << to_string(r.expected) << ','
       << to_string(r.computed) << ',' << csv_optional(r.gamma) << ',' << csv_optional(r.f_at_boundary) << ','
       << csv_field(certs) << ',' << (r.matches ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string to_csv(const std::vector<Example2Row>& rows) {
  std::ostringstream os;
  os << "x,varsigma,N,first,second,convergent,ref_first,ref_second,gap,last_term_log\n";
  for (const auto& r : rows) {
    os << format_number(r.x) << ',' << r.varsigma << ',' << r.N << ',' << format_number(r.result.first) << ','
       << format_number(r.result.second) << ',' << (r.result.convergent ? "true" : "false") << ',';
    if (r.result.reference) {
      os << format_number(r.result.reference->first) << ',' << format_number(r.result.reference->second);
    } else {
      os << ',';
    }
    os << ',' << csv_optional(r.gap) << ',' << format_number(r.result.last_term_log) << '\n';
  }
  return os.str();
}

std::string to_csv(const std::vector<BoxReport>& rows) {
  std::ostringstream os;
  os << "u,v,kappa,region,h_star,regime,status,entropy,dual_x,dual_y,roundtrip_error,empty_solution_set\n";
  for (const auto& r : rows) {
    os << format_number(r.u) << ',' << format_number(r.v) << ',' << format_number(r.kappa) << ',' << r.region
       << ',' << format_number(r.h_star.value.as_double()) << ',' << to_string(r.h_star.regime) << ','
       << to_string(r.fit.status) << ',' << format_number(r.fit.entropy.as_double()) << ',';
    if (r.dual) {
      os << format_number(r.dual->first) << ',' << format_number(r.dual->second);
    } else {
      os << ',';
    }
    os << ',' << format_number(r.roundtrip_error) << ',' << (r.empty_solution_set ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace gibbs
