#include <algorithm>
#include <cstdio>
#include <sstream>

#include "edurisk/analytics.hpp"
#include "edurisk/error.hpp"
#include "json_schema.hpp"

namespace edurisk {
namespace {

using detail::json;

std::string pad(std::string_view s, std::size_t width) {
  std::string out(s);
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

std::string format_path(const std::vector<Condition>& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += ", ";
    out += path[i].attribute + " = " + std::string(to_string(path[i].value));
  }
  return out.empty() ? "(root)" : out;
}

std::string render_text(const RiskReport& r) {
  std::ostringstream out;
  out << "Course:    " << r.course_id << '\n';
  out << "Criterion: " << r.model_criterion << '\n';
  out << "Generated: " << format_timestamp(r.generated_at) << '\n';

  std::size_t name_width = std::string_view("attribute").size();
  for (const auto& s : r.summaries) name_width = std::max(name_width, s.attribute.size());

  out << "\nAssessment summary\n";
  out << "  " << pad("attribute", name_width) << "   pass   fail  fail rate\n";
  for (const auto& s : r.summaries) {
    char nums[64];
    std::snprintf(nums, sizeof nums, "  %5zu  %5zu  %8.1f%%", s.pass_count, s.fail_count,
                  100.0 * s.fail_rate);
    out << "  " << pad(s.attribute, name_width) << nums << '\n';
  }
  if (r.summaries.empty()) out << "  (none)\n";

  out << "\nPatterns\n";
  for (const auto& p : r.patterns) {
    out << "  " << pad(p.attribute, name_width) << "  " << pad(to_string(p.kind), 12) << "  "
        << p.detail << '\n';
  }
  if (r.patterns.empty()) out << "  (none)\n";

  std::size_t id_width = std::string_view("student_id").size();
  for (const auto& e : r.at_risk) id_width = std::max(id_width, e.student_id.size());
  out << "\nStudents at risk of failing the final exam: " << r.at_risk.size() << '\n';
  if (r.at_risk.empty()) {
    out << "  (none)\n";
  } else {
    out << "  " << pad("student_id", id_width) << "  predicted  path\n";
    for (const auto& e : r.at_risk) {
      out << "  " << pad(e.student_id, id_width) << "  " << pad(to_string(e.label), 9) << "  "
          << format_path(e.path) << '\n';
    }
  }
  return out.str();
}

std::string render_machine(const RiskReport& r) {
  json summaries = json::array();
  for (const auto& s : r.summaries) {
    summaries.push_back({{"attribute", s.attribute}, {"pass", s.pass_count}, {"fail", s.fail_count}});
  }
  json patterns = json::array();
  for (const auto& p : r.patterns) {
    patterns.push_back({{"kind", std::string(to_string(p.kind))}, {"attribute", p.attribute}});
  }
  json at_risk = json::array();
  for (const auto& e : r.at_risk) {
    json path = json::array();
    for (const auto& c : e.path) path.push_back({c.attribute, std::string(to_string(c.value))});
    at_risk.push_back({{"student_id", e.student_id}, {"path", std::move(path)}});
  }
  const json doc = {
      {"course_id", r.course_id},
      {"summaries", std::move(summaries)},
      {"patterns", std::move(patterns)},
      {"at_risk", std::move(at_risk)},
      {"criterion", r.model_criterion},
      {"generated_at", format_timestamp(r.generated_at)},
  };
  return doc.dump(2) + "\n";
}

Category category_from(const json& value) {
  const auto text = value.get<std::string>();
  const auto cat = parse_category(text);
  if (!cat || text != to_string(*cat)) throw FormatError("expected Pass or Fail, found '" + text + "'");
  return *cat;
}

}  // namespace

std::string render_report(const RiskReport& report, ReportFormat format) {
  return format == ReportFormat::text ? render_text(report) : render_machine(report);
}

RiskReport parse_report(std::string_view machine_text) {
  try {
    const auto doc = json::parse(machine_text);
    detail::require_keys(doc, "report",
                         {"course_id", "summaries", "patterns", "at_risk", "criterion", "generated_at"});
    RiskReport r;
    r.course_id = doc.at("course_id").get<std::string>();
    r.model_criterion = doc.at("criterion").get<std::string>();
    r.generated_at = parse_timestamp(doc.at("generated_at").get<std::string>());

    for (const auto& s : doc.at("summaries")) {
      detail::require_keys(s, "summary", {"attribute", "pass", "fail"});
      AssessmentSummary summary{s.at("attribute").get<std::string>(), s.at("pass").get<std::size_t>(),
                                s.at("fail").get<std::size_t>(), 0.0};
      if (summary.total() > 0) {
        summary.fail_rate =
            static_cast<double>(summary.fail_count) / static_cast<double>(summary.total());
      }
      r.summaries.push_back(std::move(summary));
    }
    for (const auto& p : doc.at("patterns")) {
      detail::require_keys(p, "pattern", {"kind", "attribute"});
      const auto kind = parse_pattern_kind(p.at("kind").get<std::string>());
      if (!kind) throw FormatError("unknown pattern kind " + p.at("kind").dump());
      const auto attribute = p.at("attribute").get<std::string>();
      auto it = std::find_if(r.summaries.begin(), r.summaries.end(),
                             [&](const AssessmentSummary& s) { return s.attribute == attribute; });
      if (it == r.summaries.end()) throw FormatError("pattern for unsummarized attribute '" + attribute + "'");
      r.patterns.push_back({*kind, attribute, describe_pattern(*kind, *it)});
    }
    for (const auto& e : doc.at("at_risk")) {
      detail::require_keys(e, "at_risk entry", {"student_id", "path"});
      RiskEntry entry{e.at("student_id").get<std::string>(), Category::Fail, {}};
      for (const auto& step : e.at("path")) {
        if (!step.is_array() || step.size() != 2) throw FormatError("path steps must be [attribute, value]");
        entry.path.push_back({step.at(0).get<std::string>(), category_from(step.at(1))});
      }
      r.at_risk.push_back(std::move(entry));
    }
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace edurisk
