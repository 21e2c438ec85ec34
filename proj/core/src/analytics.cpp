#include "edurisk/analytics.hpp"

#include <cstdio>
#include <ctime>

#include "edurisk/error.hpp"
#include "edurisk/metrics.hpp"

namespace edurisk {

std::string_view to_string(PatternKind kind) noexcept {
  switch (kind) {
    case PatternKind::all_pass: return "all_pass";
    case PatternKind::all_fail: return "all_fail";
    case PatternKind::high_failure: return "high_failure";
  }
  return "high_failure";
}

std::optional<PatternKind> parse_pattern_kind(std::string_view text) noexcept {
  for (auto kind : {PatternKind::all_pass, PatternKind::all_fail, PatternKind::high_failure}) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

std::vector<AssessmentSummary> summarize(const Dataset& dataset) {
  std::vector<AssessmentSummary> out;
  out.reserve(dataset.schema.attributes.size());
  for (const auto& a : dataset.schema.attributes) {
    const auto counts = class_counts(dataset, a.name);
    AssessmentSummary s{a.name, counts.count(Category::Pass), counts.count(Category::Fail), 0.0};
    if (s.total() > 0) s.fail_rate = static_cast<double>(s.fail_count) / static_cast<double>(s.total());
    out.push_back(std::move(s));
  }
  return out;
}

void check_fail_rate_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ValidationError("fail-rate threshold must be in (0, 1], got " + std::to_string(threshold));
  }
}

std::string describe_pattern(PatternKind kind, const AssessmentSummary& s) {
  char buf[128];
  switch (kind) {
    case PatternKind::all_pass:
      std::snprintf(buf, sizeof buf, "100%% passing rate (%zu/%zu passed)", s.pass_count, s.total());
      break;
    case PatternKind::all_fail:
      std::snprintf(buf, sizeof buf, "no student passed (%zu/%zu failed)", s.fail_count, s.total());
      break;
    case PatternKind::high_failure:
      std::snprintf(buf, sizeof buf, "many failures (%zu/%zu failed, %.1f%%)", s.fail_count,
                    s.total(), 100.0 * s.fail_rate);
      break;
  }
  return buf;
}

std::vector<Pattern> detect_patterns(const std::vector<AssessmentSummary>& summaries,
                                     double fail_rate_threshold) {
  check_fail_rate_threshold(fail_rate_threshold);
  std::vector<Pattern> out;
  for (const auto& s : summaries) {
    if (s.total() == 0) continue;
    auto emit = [&](PatternKind kind) { out.push_back({kind, s.attribute, describe_pattern(kind, s)}); };
    if (s.fail_count == 0) emit(PatternKind::all_pass);
    if (s.pass_count == 0) emit(PatternKind::all_fail);
    if (s.fail_rate >= fail_rate_threshold) emit(PatternKind::high_failure);
  }
  return out;
}

std::vector<RiskEntry> risk_list(const TreeNode& model, const Dataset& cohort) {
  std::vector<RiskEntry> out;
  for (const auto& record : cohort.records) {
    auto c = classify(model, record);
    if (c.at_risk) out.push_back({record.student_id, c.label, std::move(c.path)});
  }
  return out;
}

RiskReport build_report(const Model& model, const Dataset& cohort, std::string course_id,
                        double fail_rate_threshold, Timestamp generated_at) {
  RiskReport report;
  report.course_id = std::move(course_id);
  report.summaries = summarize(cohort);
  report.patterns = detect_patterns(report.summaries, fail_rate_threshold);
  report.at_risk = risk_list(model.tree, cohort);
  report.model_criterion = std::string(to_string(model.criterion));
  report.generated_at = generated_at;
  return report;
}

std::string format_timestamp(Timestamp t) {
  const std::time_t raw = t.time_since_epoch().count();
  std::tm tm{};
  gmtime_r(&raw, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Timestamp parse_timestamp(std::string_view text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char tail = 0;
  const std::string copy(text);
  if (copy.size() != 20 ||
      std::sscanf(copy.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &s, &tail) != 7 ||
      tail != 'Z') {
    throw FormatError("timestamp must look like YYYY-MM-DDTHH:MM:SSZ, got '" + copy + "'");
  }
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59 || h < 0 || mi < 0 || s < 0) {
    throw FormatError("invalid timestamp '" + copy + "'");
  }
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

}  // namespace edurisk
