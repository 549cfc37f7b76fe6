#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "parabolab/contact.hpp"
#include "parabolab/covering.hpp"
#include "parabolab/density.hpp"
#include "parabolab/measure.hpp"
#include "parabolab/solver.hpp"

namespace parabolab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "parabolab/1";

/// Finite doubles pass through; NaN becomes null, infinities "inf" / "-inf".
Json number(double v);
Json point_json(const Point& x, int ndim);
Json ball_json(const Ball& b, int ndim);

/// {"schema", "command", "manifest"} header shared by every report.
Json report_header(const std::string& command, const Json& manifest);

/// Shortest round-trip decimal, '.' separator regardless of locale.
std::string format_double(double v);

void write_json(const std::string& path, const Json& j);

/// Columns k,t_k,measure_lower,measure_upper,measure_both.
void write_decay_csv(std::ostream& out, const DecayReport& r);
void write_decay_csv(const std::string& path, const DecayReport& r);

/// Generic CSV: header then rows of numbers.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

Json to_json(const DecayReport& r);
Json to_json(const ContactSet& c);
Json to_json(const SolveResult& r);
Json to_json(const ResidualReport& r, const GridSpec& grid);
Json to_json(const DensityScanReport& r, int ndim);
Json to_json(const WitnessResult& r, int ndim);
Json to_json(const DensityProbe& r, int ndim);
Json to_json(const CoveringVerdict& v, int ndim);
Json to_json(const NormalizationResult& r);
Json to_json(const DecayBound& b);

}  // namespace parabolab
