#include "unicmp/json_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace unicmp::io {

namespace {

double number_from_json(const json& j, const std::string& field) {
  if (!j.is_number())
    throw std::invalid_argument("field '" + field + "' must be a number");
  return j.get<double>();
}

const json& member(const json& j, const std::string& field, const std::string& context) {
  if (!j.is_object() || !j.contains(field))
    throw std::invalid_argument(context + ": missing field '" + field + "'");
  return j.at(field);
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

json complex_to_json(linalg::cplx z) { return json::array({z.real(), z.imag()}); }

linalg::cplx complex_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("field '" + field + "' must be a 2-element array [re, im]");
  return {number_from_json(j[0], field), number_from_json(j[1], field)};
}

json matrix_to_json(const linalg::ComplexMatrix& m) {
  json entries = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) entries.push_back(complex_to_json(m(r, c)));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

linalg::ComplexMatrix matrix_from_json(const json& j) {
  const auto rows = member(j, "rows", "matrix").get<std::size_t>();
  const auto cols = member(j, "cols", "matrix").get<std::size_t>();
  const json& entries = member(j, "entries", "matrix");
  if (!entries.is_array() || entries.size() != rows * cols)
    throw std::invalid_argument("matrix: field 'entries' must hold rows*cols complex numbers");
  std::vector<linalg::cplx> values;
  values.reserve(entries.size());
  for (const auto& e : entries) values.push_back(complex_from_json(e, "entries"));
  return {rows, cols, std::move(values)};
}

json state_to_json(const linalg::PureState& s) {
  json amps = json::array();
  for (const auto& a : s.amplitudes()) amps.push_back(complex_to_json(a));
  return json{{"dims", s.dims()}, {"amplitudes", std::move(amps)}};
}

linalg::PureState state_from_json(const json& j) {
  const json& dims_json = member(j, "dims", "state");
  if (!dims_json.is_array() || dims_json.empty())
    throw std::invalid_argument("state: field 'dims' must be a non-empty array of counts");
  std::vector<std::size_t> dims;
  for (const auto& d : dims_json) {
    if (!d.is_number_unsigned() || d.get<std::size_t>() < 1)
      throw std::invalid_argument("state: field 'dims' must hold positive counts");
    dims.push_back(d.get<std::size_t>());
  }
  const json& amps_json = member(j, "amplitudes", "state");
  if (!amps_json.is_array())
    throw std::invalid_argument("state: field 'amplitudes' must be an array");
  std::vector<linalg::cplx> amps;
  amps.reserve(amps_json.size());
  for (const auto& a : amps_json) amps.push_back(complex_from_json(a, "amplitudes"));
  return {std::move(dims), std::move(amps)};
}

json su2_to_json(const haar::SU2Phase& p) {
  return json{{"theta", p.theta}, {"alpha", p.alpha}, {"beta", p.beta}, {"phi", p.phi}};
}

haar::SU2Phase su2_from_json(const json& j) {
  haar::SU2Phase p;
  p.theta = number_from_json(member(j, "theta", "su2 parameters"), "theta");
  p.alpha = number_from_json(member(j, "alpha", "su2 parameters"), "alpha");
  p.beta = number_from_json(member(j, "beta", "su2 parameters"), "beta");
  p.phi = number_from_json(member(j, "phi", "su2 parameters"), "phi");
  if (!(p.theta >= 0.0 && p.theta <= std::numbers::pi / 2.0))
    throw std::invalid_argument("field 'theta' must lie in [0, pi/2]");
  return p;
}

json estimation_to_json(const experiments::EstimationResult& r) {
  return json{{"strategy", r.strategy_id}, {"params", r.params},
              {"mean", r.mean},            {"std_error", r.std_error},
              {"n_samples", r.n_samples},  {"seed", r.seed}};
}

std::string estimation_to_csv(const experiments::EstimationResult& r) {
  std::ostringstream out;
  out << "strategy,params,mean,std_error,n_samples,seed\n";
  out << r.strategy_id << ",";
  bool first = true;
  for (const auto& [key, value] : r.params) {
    if (!first) out << ";";
    out << key << "=" << format_double(value);
    first = false;
  }
  out << "," << format_double(r.mean) << "," << format_double(r.std_error) << "," << r.n_samples
      << "," << r.seed << "\n";
  return out.str();
}

json sweep_to_json(const std::vector<experiments::SweepRow>& rows) {
  json out = json::array();
  for (const auto& row : rows)
    out.push_back(json{{"delta_theta", row.delta_theta},
                       {"single_particle", row.single_particle},
                       {"singlet", row.singlet},
                       {"nonentangled", row.nonentangled},
                       {"singlet_over_single_ratio", row.singlet_over_single_ratio},
                       {"two_run_single_compound", row.two_run_single_compound}});
  return out;
}

std::string sweep_to_csv(const std::vector<experiments::SweepRow>& rows) {
  std::ostringstream out;
  out << "delta_theta,single_particle,singlet,nonentangled,singlet_over_single_ratio,"
         "two_run_single_compound\n";
  for (const auto& row : rows)
    out << format_double(row.delta_theta) << "," << format_double(row.single_particle) << ","
        << format_double(row.singlet) << "," << format_double(row.nonentangled) << ","
        << format_double(row.singlet_over_single_ratio) << ","
        << format_double(row.two_run_single_compound) << "\n";
  return out.str();
}

json report_to_json(const strategies::StrategyReport& r) {
  json outcomes = json::array();
  for (const auto& o : r.outcomes)
    outcomes.push_back(json{{"label", o.label},
                            {"probability", o.probability},
                            {"signals_difference", o.signals_difference}});
  return json{{"p_diff", r.p_diff},
              {"difference_subspace_dim", r.difference_subspace_dim},
              {"ambient_dim", r.ambient_dim},
              {"outcomes", std::move(outcomes)}};
}

std::string report_to_csv(const strategies::StrategyReport& r) {
  std::ostringstream out;
  out << "quantity,label,value\n";
  out << "p_diff,," << format_double(r.p_diff) << "\n";
  out << "difference_subspace_dim,," << r.difference_subspace_dim << "\n";
  out << "ambient_dim,," << r.ambient_dim << "\n";
  for (const auto& o : r.outcomes)
    out << (o.signals_difference ? "outcome_different," : "outcome_inconclusive,") << o.label
        << "," << format_double(o.probability) << "\n";
  return out.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::invalid_argument(what + ": " + err.what());
  }
}

}  // namespace unicmp::io
