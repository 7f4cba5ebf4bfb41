#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbuw/bias_correction.hpp"
#include "mbuw/mle.hpp"
#include "mbuw/simulation.hpp"
#include "mbuw/variance_correction.hpp"

namespace mbuw::cli {

inline constexpr const char* kToolkitVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1.0";

using nlohmann::json;

/// Collects the reason for every number that had to be written as null.
class NullLog {
 public:
  json number(double v, const std::string& field);
  void note(std::string message) { messages_.push_back(std::move(message)); }
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
};

json input_digest(const std::string& file, const SampleData& data);

/// Plain maximum likelihood: variances from the inverse expected information
/// when it is positive definite, null otherwise.
json mle_report(const SampleData& data, const MleFit& fit, const QuadratureConfig& quad);

/// Report for method=bias-corrected. Falls back to method "mle" (with the
/// reason in diagnostics) when the correction was withheld.
json bias_report(const SampleData& data, const MleFit& fit, const BiasReport& bias, const QuadratureConfig& quad);

json varfit_report(const SampleData& data, const VarCorrectedFit& fit, const QuadratureConfig& quad);

/// Top-level document wrapping one or more reports.
json document(const std::string& command, json input, json reports);

json study_json(const StudyResult& r);

/// Reports side by side, 4 decimals, one column per report.
std::string comparison_table(const std::vector<VarCorrectedFit>& fits);

/// 2-space indented JSON followed by a newline.
std::string render(const json& j);

}  // namespace mbuw::cli
