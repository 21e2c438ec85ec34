#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edurisk/category.hpp"

namespace edurisk {

enum class AttributeKind { quiz, assignment1, assignment2, midterm, other };
enum class CourseType { with_practical, without_practical };

std::string_view to_string(AttributeKind kind) noexcept;
std::string_view to_string(CourseType type) noexcept;
std::optional<AttributeKind> parse_attribute_kind(std::string_view text) noexcept;
std::optional<CourseType> parse_course_type(std::string_view text) noexcept;

/// Standard pass mark for an assessment kind; absent for `other`, which has no
/// standard norm and must be configured explicitly.
std::optional<double> default_threshold(AttributeKind kind, CourseType course) noexcept;

struct AttributeDescriptor {
  std::string name;
  AttributeKind kind = AttributeKind::other;
  std::size_t position = 0;

  bool operator==(const AttributeDescriptor&) const = default;
};

/// Declared assessments of one course, their raw-mark pass thresholds and the
/// name of the target column. The course totals are carried as metadata; the
/// target label is read from data and never recomputed from them.
struct AttributeSchema {
  std::vector<AttributeDescriptor> attributes;
  CourseType course_type = CourseType::with_practical;
  std::map<std::string, double> thresholds;
  std::string target_name = "Final";
  double coursework_max = 60.0;
  double final_max = 40.0;
  double total_pass_mark = 60.0;
  double fail_rate_threshold = 0.4;

  std::optional<std::size_t> index_of(std::string_view name) const;
  bool has_attribute(std::string_view name) const { return index_of(name).has_value(); }
  std::optional<double> threshold_for(std::string_view name) const;
  std::vector<std::string> predictor_names() const;

  bool operator==(const AttributeSchema&) const = default;
};

/// The five assessments common to every course, with thresholds for `course`.
AttributeSchema standard_schema(CourseType course);

/// Throws ValidationError when names are empty or repeated, the target
/// collides with a predictor, or a threshold is negative / non-finite.
void validate_schema(const AttributeSchema& schema);

/// Parses the line-oriented `key = value` course config. Without any
/// `attribute.<name>.kind` line the standard five assessments are used and
/// `attribute.<name>.threshold` may only override their pass marks.
AttributeSchema parse_schema(std::string_view config_text);

std::string format_schema(const AttributeSchema& schema);

struct StudentRecord {
  std::string student_id;
  std::map<std::string, Category> values;
  std::optional<Category> target;

  std::optional<Category> value_of(std::string_view attribute) const;

  bool operator==(const StudentRecord&) const = default;
};

struct Dataset {
  AttributeSchema schema;
  std::vector<StudentRecord> records;

  std::size_t size() const noexcept { return records.size(); }
  bool empty() const noexcept { return records.empty(); }
  /// Records whose `attribute` equals `value`, order preserved.
  Dataset filtered(std::string_view attribute, Category value) const;
  /// Same records with targets removed.
  Dataset unlabeled() const;

  bool operator==(const Dataset&) const = default;
};

/// Pass iff mark >= threshold. Throws DomainError for negative or
/// non-finite marks.
Category discretize_mark(double mark, double threshold);

enum class CsvMode { raw_marks, categorical };

/// Reads a grade sheet. The first column must be `student_id`; every schema
/// attribute must have a column (any order) and a column named after the
/// target is optional. The target is always categorical; an empty target
/// cell means "not yet examined".
Dataset parse_csv(std::string_view csv_text, const AttributeSchema& schema,
                  CsvMode mode = CsvMode::categorical);

/// Categorical CSV in schema column order. The target column is written when
/// any record carries a target.
std::string write_csv(const Dataset& dataset);

struct Violation {
  std::size_t record_index = 0;
  std::string attribute;  // empty for record-level violations
  std::string message;

  bool operator==(const Violation&) const = default;
};

enum class ValidationContext { cohort, training };

std::vector<Violation> validate_dataset(const Dataset& dataset,
                                        ValidationContext context = ValidationContext::cohort);

}  // namespace edurisk
