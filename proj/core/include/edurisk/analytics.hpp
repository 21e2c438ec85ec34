#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edurisk/category.hpp"
#include "edurisk/model_io.hpp"
#include "edurisk/schema.hpp"
#include "edurisk/tree.hpp"

namespace edurisk {

struct AssessmentSummary {
  std::string attribute;
  std::size_t pass_count = 0;
  std::size_t fail_count = 0;
  double fail_rate = 0.0;

  std::size_t total() const noexcept { return pass_count + fail_count; }
  bool operator==(const AssessmentSummary&) const = default;
};

enum class PatternKind { all_pass, all_fail, high_failure };

std::string_view to_string(PatternKind kind) noexcept;
std::optional<PatternKind> parse_pattern_kind(std::string_view text) noexcept;

struct Pattern {
  PatternKind kind;
  std::string attribute;
  std::string detail;

  bool operator==(const Pattern&) const = default;
};

struct RiskEntry {
  std::string student_id;
  Category label = Category::Fail;
  std::vector<Condition> path;

  bool operator==(const RiskEntry&) const = default;
};

using Timestamp = std::chrono::sys_seconds;

struct RiskReport {
  std::string course_id;
  std::vector<AssessmentSummary> summaries;
  std::vector<Pattern> patterns;
  std::vector<RiskEntry> at_risk;
  std::string model_criterion;
  Timestamp generated_at{};

  bool operator==(const RiskReport&) const = default;
};

/// Pass/fail counts per predictor, schema order. Targets are not needed.
std::vector<AssessmentSummary> summarize(const Dataset& dataset);

/// Throws ValidationError unless 0 < threshold <= 1.
void check_fail_rate_threshold(double threshold);

/// all_pass, all_fail and high_failure (fail_rate >= threshold) patterns, in
/// summary order. Empty assessments produce nothing.
std::vector<Pattern> detect_patterns(const std::vector<AssessmentSummary>& summaries,
                                     double fail_rate_threshold);

/// Human-readable description of a pattern, derived from its summary.
std::string describe_pattern(PatternKind kind, const AssessmentSummary& summary);

/// Students the model classifies Fail, in cohort order. Targets are ignored.
std::vector<RiskEntry> risk_list(const TreeNode& model, const Dataset& cohort);

RiskReport build_report(const Model& model, const Dataset& cohort, std::string course_id,
                        double fail_rate_threshold, Timestamp generated_at);

/// `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_timestamp(Timestamp t);
/// Accepts the format above; throws FormatError otherwise.
Timestamp parse_timestamp(std::string_view text);

enum class ReportFormat { text, machine };

std::string render_report(const RiskReport& report, ReportFormat format);

/// Inverse of the machine rendering. Pattern details and fail rates are
/// recomputed from the summaries, so the result compares equal to the report
/// that was rendered.
RiskReport parse_report(std::string_view machine_text);

}  // namespace edurisk
