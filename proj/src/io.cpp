#include "ghost/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "ghost/error.hpp"

namespace ghost {
namespace {

double parse_field(const std::string& text, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    throw Error(Errc::InvalidArgument,
                "line " + std::to_string(line) + ": bad number '" + text + "'");
  }
  return value;
}

std::string trim_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

// NaN marks a field that does not belong to the model; JSON has no NaN.
nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

std::string format_scientific(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

void write_samples_csv(std::ostream& out, const std::vector<ScalingSample>& samples,
                       Engine engine, std::string_view phase, std::string_view param) {
  out << kSampleHeader << '\n';
  for (const auto& s : samples) {
    out << format_scientific(s.r) << ',' << format_scientific(s.t) << ',' << engine_name(engine)
        << ',' << phase << ',' << param << '\n';
  }
}

std::vector<SampleRow> read_samples_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim_cr(line) != kSampleHeader) {
    throw Error(Errc::InvalidArgument, "expected CSV header '" + std::string(kSampleHeader) + "'");
  }
  std::vector<SampleRow> rows;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    line = trim_cr(line);
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) {
      throw Error(Errc::InvalidArgument, "line " + std::to_string(number) + ": expected 5 columns");
    }
    rows.push_back({{parse_field(cells[0], number), parse_field(cells[1], number)},
                    cells[2], cells[3], cells[4]});
  }
  return rows;
}

std::vector<ScalingSample> samples_of(const std::vector<SampleRow>& rows) {
  std::vector<ScalingSample> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.sample);
  return out;
}

void to_json(nlohmann::json& j, const ScalingFit& fit) {
  j = nlohmann::json{{"model", std::string(model_name(fit.model))},
                     {"exponent", number_or_null(fit.exponent)},
                     {"prefactor", number_or_null(fit.prefactor)},
                     {"intercept", number_or_null(fit.intercept)},
                     {"rmse", fit.rmse},
                     {"r_squared", fit.r_squared}};
}

void to_json(nlohmann::json& j, const PassageResult& result) {
  j = nlohmann::json{{"time", result.time},
                     {"engine", std::string(engine_name(result.engine))},
                     {"error_estimate", result.error_estimate},
                     {"evaluations", result.evaluations}};
}

void to_json(nlohmann::json& j, const RegimeMap& map) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : map.entries) entries.push_back({{"alpha", e.alpha}, {"fit", e.fit}});
  j = nlohmann::json{{"entries", entries}};
}

void to_json(nlohmann::json& j, const Prediction& prediction) {
  j = nlohmann::json{{"class", std::string(predicted_name(prediction.cls))},
                     {"exponent", number_or_null(prediction.exponent)},
                     {"coefficient", number_or_null(prediction.coefficient)}};
}

}  // namespace ghost
