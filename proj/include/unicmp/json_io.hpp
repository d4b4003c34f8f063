// JSON and CSV encodings shared by the library and the CLI.
//
// Schema: complex numbers are 2-element arrays [re, im]; a matrix is
// {"rows": n, "cols": n, "entries": [[re,im], ...]} in row-major order; a
// state is {"dims": [d1, ...], "amplitudes": [[re,im], ...]}; an SU(2)+phase
// parameter set is {"theta": t, "alpha": a, "beta": b, "phi": p}.
// CSV output carries a header row, UTF-8, LF line endings, floats with 12
// significant digits.

#pragma once

#include <string>

#include <json.hpp>

#include "unicmp/experiments.hpp"
#include "unicmp/haar.hpp"
#include "unicmp/linalg.hpp"
#include "unicmp/strategies.hpp"

namespace unicmp::io {

using json = nlohmann::ordered_json;

/// 12-significant-digit float formatting used by every CSV emitter.
std::string format_double(double value);

json complex_to_json(linalg::cplx z);
linalg::cplx complex_from_json(const json& j, const std::string& field);

json matrix_to_json(const linalg::ComplexMatrix& m);
linalg::ComplexMatrix matrix_from_json(const json& j);

json state_to_json(const linalg::PureState& s);
linalg::PureState state_from_json(const json& j);

json su2_to_json(const haar::SU2Phase& p);
haar::SU2Phase su2_from_json(const json& j);

json estimation_to_json(const experiments::EstimationResult& r);
std::string estimation_to_csv(const experiments::EstimationResult& r);

json sweep_to_json(const std::vector<experiments::SweepRow>& rows);
std::string sweep_to_csv(const std::vector<experiments::SweepRow>& rows);

json report_to_json(const strategies::StrategyReport& r);
std::string report_to_csv(const strategies::StrategyReport& r);

/// Parses a JSON document, rethrowing parse failures as std::invalid_argument
/// with `what` naming the offending input.
json parse_json(const std::string& text, const std::string& what);

}  // namespace unicmp::io
