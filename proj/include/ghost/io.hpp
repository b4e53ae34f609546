#pragma once

// Wire formats: sample CSV `r,t,engine,phase,param` (17 significant digits)
// and JSON objects for fits, passage results and regime maps.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ghost/passage.hpp"
#include "ghost/scaling.hpp"

namespace ghost {

inline constexpr std::string_view kSampleHeader = "r,t,engine,phase,param";

struct SampleRow {
  ScalingSample sample;
  std::string engine;
  std::string phase;
  std::string param;
};

/// %.16e; reads back to the identical double.
std::string format_scientific(double value);

void write_samples_csv(std::ostream& out, const std::vector<ScalingSample>& samples,
                       Engine engine, std::string_view phase, std::string_view param);

/// Throws InvalidArgument on a malformed header or row.
std::vector<SampleRow> read_samples_csv(std::istream& in);
std::vector<ScalingSample> samples_of(const std::vector<SampleRow>& rows);

void to_json(nlohmann::json& j, const ScalingFit& fit);
void to_json(nlohmann::json& j, const PassageResult& result);
void to_json(nlohmann::json& j, const RegimeMap& map);
void to_json(nlohmann::json& j, const Prediction& prediction);

}  // namespace ghost
