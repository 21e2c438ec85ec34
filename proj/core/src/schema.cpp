#include "edurisk/schema.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "edurisk/error.hpp"
#include "text_util.hpp"

namespace edurisk {
namespace {

using detail::shortest;
using detail::trim;

std::optional<double> parse_number(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

struct AttributeLines {
  std::optional<AttributeKind> kind;
  std::size_t kind_line = 0;
  std::optional<double> threshold;
  std::size_t threshold_line = 0;
};

}  // namespace

std::string_view to_string(AttributeKind kind) noexcept {
  switch (kind) {
    case AttributeKind::quiz: return "quiz";
    case AttributeKind::assignment1: return "assignment1";
    case AttributeKind::assignment2: return "assignment2";
    case AttributeKind::midterm: return "midterm";
    case AttributeKind::other: return "other";
  }
  return "other";
}

std::string_view to_string(CourseType type) noexcept {
  return type == CourseType::with_practical ? "with_practical" : "without_practical";
}

std::optional<AttributeKind> parse_attribute_kind(std::string_view text) noexcept {
  for (auto kind : {AttributeKind::quiz, AttributeKind::assignment1, AttributeKind::assignment2,
                    AttributeKind::midterm, AttributeKind::other}) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

std::optional<CourseType> parse_course_type(std::string_view text) noexcept {
  if (text == "with_practical") return CourseType::with_practical;
  if (text == "without_practical") return CourseType::without_practical;
  return std::nullopt;
}

std::optional<double> default_threshold(AttributeKind kind, CourseType course) noexcept {
  const bool practical = course == CourseType::with_practical;
  switch (kind) {
    case AttributeKind::quiz: return 6.0;
    case AttributeKind::assignment1: return practical ? 4.8 : 6.0;
    case AttributeKind::assignment2: return practical ? 7.2 : 6.0;
    case AttributeKind::midterm: return 12.0;
    case AttributeKind::other: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<std::size_t> AttributeSchema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<double> AttributeSchema::threshold_for(std::string_view name) const {
  auto it = thresholds.find(std::string(name));
  if (it == thresholds.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> AttributeSchema::predictor_names() const {
  std::vector<std::string> names;
  names.reserve(attributes.size());
  for (const auto& a : attributes) names.push_back(a.name);
  return names;
}

AttributeSchema standard_schema(CourseType course) {
  static const std::pair<const char*, AttributeKind> kStandard[] = {
      {"Quiz 1", AttributeKind::quiz},
      {"Quiz 2", AttributeKind::quiz},
      {"Mid-Term", AttributeKind::midterm},
      {"Assignment 1", AttributeKind::assignment1},
      {"Assignment 2", AttributeKind::assignment2},
  };
  AttributeSchema schema;
  schema.course_type = course;
  std::size_t position = 0;
  for (const auto& [name, kind] : kStandard) {
    schema.attributes.push_back({name, kind, position++});
    schema.thresholds[name] = *default_threshold(kind, course);
  }
  return schema;
}

void validate_schema(const AttributeSchema& schema) {
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < schema.attributes.size(); ++i) {
    const auto& a = schema.attributes[i];
    if (a.name.empty()) throw ValidationError("attribute name must not be empty");
    if (a.name == "student_id") {
      throw ValidationError("'student_id' is reserved and cannot be an attribute");
    }
    if (!seen.insert(a.name).second) {
      throw ValidationError("duplicate attribute '" + a.name + "'");
    }
    if (a.position != i) {
      throw ValidationError("attribute '" + a.name + "' has position " +
                            std::to_string(a.position) + ", expected " + std::to_string(i));
    }
  }
  if (schema.target_name.empty()) throw ValidationError("target name must not be empty");
  if (seen.count(schema.target_name) != 0) {
    throw ValidationError("target '" + schema.target_name + "' is also a predictor attribute");
  }
  for (const auto& [name, value] : schema.thresholds) {
    if (seen.count(name) == 0) {
      throw ValidationError("threshold given for undeclared attribute '" + name + "'");
    }
    if (!std::isfinite(value) || value < 0.0) {
      throw ValidationError("threshold for '" + name + "' must be finite and non-negative");
    }
  }
  if (!(schema.fail_rate_threshold > 0.0 && schema.fail_rate_threshold <= 1.0)) {
    throw ValidationError("pattern.fail_rate_threshold must be in (0, 1]");
  }
  for (double v : {schema.coursework_max, schema.final_max, schema.total_pass_mark}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError("course mark totals must be finite and non-negative");
    }
  }
}

AttributeSchema parse_schema(std::string_view config_text) {
  std::optional<CourseType> course;
  std::optional<std::string> target;
  std::map<std::string, double> numeric;
  std::map<std::string, std::size_t> numeric_line;
  // Declaration order of attribute names, first mention wins.
  std::vector<std::string> order;
  std::map<std::string, AttributeLines> attrs;

  static const std::set<std::string_view> kNumericKeys = {
      "coursework_max", "final_max", "total_pass_mark", "pattern.fail_rate_threshold"};

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= config_text.size()) {
    auto end = config_text.find('\n', start);
    if (end == std::string_view::npos) end = config_text.size();
    const auto line = trim(config_text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no);
    if (value.empty()) throw ParseError("empty value for '" + std::string(key) + "'", line_no);

    if (key == "course_type") {
      if (course) throw ParseError("duplicate key 'course_type'", line_no);
      course = parse_course_type(value);
      if (!course) {
        throw ParseError("course_type must be with_practical or without_practical", line_no);
      }
    } else if (key == "target") {
      if (target) throw ParseError("duplicate key 'target'", line_no);
      target = std::string(value);
    } else if (kNumericKeys.count(key) != 0) {
      const std::string k(key);
      if (numeric.count(k) != 0) throw ParseError("duplicate key '" + k + "'", line_no);
      const auto number = parse_number(value);
      if (!number) throw ParseError("'" + k + "' is not a number", line_no);
      numeric[k] = *number;
      numeric_line[k] = line_no;
    } else if (key.substr(0, 10) == "attribute.") {
      const auto rest = key.substr(10);
      const auto dot = rest.rfind('.');
      if (dot == std::string_view::npos) {
        throw ParseError("unknown key '" + std::string(key) + "'", line_no);
      }
      const std::string name(trim(rest.substr(0, dot)));
      const auto field = rest.substr(dot + 1);
      if (name.empty()) throw ParseError("empty attribute name", line_no);
      if (field != "kind" && field != "threshold") {
        throw ParseError("unknown key '" + std::string(key) + "'", line_no);
      }
      if (attrs.count(name) == 0) order.push_back(name);
      auto& entry = attrs[name];
      if (field == "kind") {
        if (entry.kind) {
          throw ValidationError("line " + std::to_string(line_no) + ": duplicate attribute '" +
                                name + "' (first declared on line " +
                                std::to_string(entry.kind_line) + ")");
        }
        entry.kind = parse_attribute_kind(value);
        if (!entry.kind) throw ParseError("unknown attribute kind '" + std::string(value) + "'", line_no);
        entry.kind_line = line_no;
      } else {
        if (entry.threshold) {
          throw ParseError("duplicate threshold for attribute '" + name + "'", line_no);
        }
        entry.threshold = parse_number(value);
        if (!entry.threshold) throw ParseError("threshold for '" + name + "' is not a number", line_no);
        entry.threshold_line = line_no;
      }
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", line_no);
    }
  }

  if (!course) throw ParseError("missing required key 'course_type'", line_no);

  const bool explicit_attributes =
      std::any_of(attrs.begin(), attrs.end(), [](const auto& kv) { return kv.second.kind.has_value(); });

  AttributeSchema schema;
  if (explicit_attributes) {
    schema.course_type = *course;
    std::size_t position = 0;
    for (const auto& name : order) {
      const auto& entry = attrs.at(name);
      if (!entry.kind) {
        throw ParseError("threshold given for undeclared attribute '" + name + "'",
                         entry.threshold_line);
      }
      schema.attributes.push_back({name, *entry.kind, position++});
      if (auto t = entry.threshold ? entry.threshold : default_threshold(*entry.kind, *course)) {
        schema.thresholds[name] = *t;
      }
    }
  } else {
    schema = standard_schema(*course);
    for (const auto& name : order) {
      const auto& entry = attrs.at(name);
      if (!schema.has_attribute(name)) {
        throw ParseError("threshold given for undeclared attribute '" + name + "'",
                         entry.threshold_line);
      }
      schema.thresholds[name] = *entry.threshold;
    }
  }

  if (target) schema.target_name = *target;
  if (auto it = numeric.find("coursework_max"); it != numeric.end()) schema.coursework_max = it->second;
  if (auto it = numeric.find("final_max"); it != numeric.end()) schema.final_max = it->second;
  if (auto it = numeric.find("total_pass_mark"); it != numeric.end()) schema.total_pass_mark = it->second;
  if (auto it = numeric.find("pattern.fail_rate_threshold"); it != numeric.end()) {
    schema.fail_rate_threshold = it->second;
  }

  validate_schema(schema);
  return schema;
}

std::string format_schema(const AttributeSchema& schema) {
  std::ostringstream out;
  out << "course_type = " << to_string(schema.course_type) << '\n';
  out << "target = " << schema.target_name << '\n';
  for (const auto& a : schema.attributes) {
    out << "attribute." << a.name << ".kind = " << to_string(a.kind) << '\n';
    if (auto t = schema.threshold_for(a.name)) {
      out << "attribute." << a.name << ".threshold = " << shortest(*t) << '\n';
    }
  }
  out << "coursework_max = " << shortest(schema.coursework_max) << '\n';
  out << "final_max = " << shortest(schema.final_max) << '\n';
  out << "total_pass_mark = " << shortest(schema.total_pass_mark) << '\n';
  out << "pattern.fail_rate_threshold = " << shortest(schema.fail_rate_threshold) << '\n';
  return out.str();
}

}  // namespace edurisk
