#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "edurisk/error.hpp"
#include "edurisk/schema.hpp"
#include "text_util.hpp"

namespace edurisk {
namespace {

using detail::trim;

using Row = std::vector<std::string>;

// RFC 4180 style: quoted fields may contain commas, newlines and "" escapes.
std::vector<Row> tokenize(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<Row> rows;
  Row row;
  std::string cell;
  bool quoted = false;
  bool row_has_content = false;
  auto end_cell = [&] {
    row.push_back(std::move(cell));
    cell.clear();
  };
  auto end_row = [&] {
    end_cell();
    const bool blank = row.size() == 1 && trim(row.front()).empty() && !row_has_content;
    if (!blank) rows.push_back(std::move(row));
    row.clear();
    row_has_content = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
      row_has_content = true;
    } else if (c == ',') {
      end_cell();
      row_has_content = true;
    } else if (c == '\n') {
      end_row();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  if (!cell.empty() || !row.empty() || row_has_content) end_row();
  return rows;
}

std::string quote_if_needed(std::string_view field) {
  const bool needs = field.find_first_of(",\"\n\r") != std::string_view::npos ||
                     (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::optional<double> parse_decimal(std::string_view text) {
  double value = 0.0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) return std::nullopt;
  return value;
}

}  // namespace

Category discretize_mark(double mark, double threshold) {
  if (!std::isfinite(mark) || mark < 0.0) {
    throw DomainError("mark must be finite and non-negative, got " + detail::shortest(mark));
  }
  return mark >= threshold ? Category::Pass : Category::Fail;
}

std::optional<Category> StudentRecord::value_of(std::string_view attribute) const {
  auto it = values.find(std::string(attribute));
  if (it == values.end()) return std::nullopt;
  return it->second;
}

Dataset Dataset::filtered(std::string_view attribute, Category value) const {
  Dataset out{schema, {}};
  for (const auto& r : records) {
    if (r.value_of(attribute) == value) out.records.push_back(r);
  }
  return out;
}

Dataset Dataset::unlabeled() const {
  Dataset out = *this;
  for (auto& r : out.records) r.target.reset();
  return out;
}

Dataset parse_csv(std::string_view csv_text, const AttributeSchema& schema, CsvMode mode) {
  const auto rows = tokenize(csv_text);
  if (rows.empty()) throw SchemaMismatchError("student_id", "missing header row");

  const auto& header = rows.front();
  if (trim(header.front()) != "student_id") {
    throw SchemaMismatchError("student_id", "first column must be 'student_id'");
  }

  // Column index -> attribute index, or npos for the target column.
  constexpr std::size_t kTarget = static_cast<std::size_t>(-1);
  std::vector<std::size_t> column_role(header.size(), 0);
  std::vector<bool> covered(schema.attributes.size(), false);
  std::set<std::string> seen;
  for (std::size_t c = 1; c < header.size(); ++c) {
    const std::string name(trim(header[c]));
    if (!seen.insert(name).second) {
      throw SchemaMismatchError(name, "duplicate column '" + name + "'");
    }
    if (name == schema.target_name) {
      column_role[c] = kTarget;
    } else if (auto idx = schema.index_of(name)) {
      column_role[c] = *idx;
      covered[*idx] = true;
    } else {
      throw SchemaMismatchError(name, "unexpected column '" + name + "'");
    }
  }
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (!covered[i]) {
      const auto& name = schema.attributes[i].name;
      throw SchemaMismatchError(name, "missing column '" + name + "'");
    }
  }

  if (mode == CsvMode::raw_marks) {
    for (const auto& a : schema.attributes) {
      if (!schema.threshold_for(a.name)) {
        throw ValidationError("attribute '" + a.name + "' has no pass threshold for raw marks");
      }
    }
  }

  Dataset dataset{schema, {}};
  dataset.records.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::size_t row_no = r;
    if (row.size() != header.size()) {
      throw CellError(row_no, "", "expected " + std::to_string(header.size()) + " cells, found " +
                                      std::to_string(row.size()));
    }
    StudentRecord record;
    record.student_id = std::string(trim(row[0]));
    if (record.student_id.empty()) throw MissingValueError(row_no, "student_id");
    for (std::size_t c = 1; c < row.size(); ++c) {
      const auto cell = trim(row[c]);
      const auto column = std::string(trim(header[c]));
      if (column_role[c] == kTarget) {
        if (cell.empty()) continue;
        auto cat = parse_category(cell);
        if (!cat) throw CellError(row_no, column, "expected Pass or Fail, found '" + std::string(cell) + "'");
        record.target = *cat;
        continue;
      }
      if (cell.empty()) throw MissingValueError(row_no, column);
      Category value{};
      if (mode == CsvMode::categorical) {
        auto cat = parse_category(cell);
        if (!cat) throw CellError(row_no, column, "expected Pass or Fail, found '" + std::string(cell) + "'");
        value = *cat;
      } else {
        auto mark = parse_decimal(cell);
        if (!mark) throw CellError(row_no, column, "not a number: '" + std::string(cell) + "'");
        try {
          value = discretize_mark(*mark, *schema.threshold_for(column));
        } catch (const DomainError& e) {
          throw CellError(row_no, column, e.what());
        }
      }
      record.values.emplace(column, value);
    }
    dataset.records.push_back(std::move(record));
  }
  return dataset;
}

std::string write_csv(const Dataset& dataset) {
  const auto& schema = dataset.schema;
  bool with_target = false;
  for (const auto& r : dataset.records) with_target = with_target || r.target.has_value();

  std::string out = "student_id";
  for (const auto& a : schema.attributes) out += "," + quote_if_needed(a.name);
  if (with_target) out += "," + quote_if_needed(schema.target_name);
  out += '\n';
  for (const auto& r : dataset.records) {
    out += quote_if_needed(r.student_id);
    for (const auto& a : schema.attributes) {
      out += ',';
      if (auto v = r.value_of(a.name)) out += to_string(*v);
    }
    if (with_target) {
      out += ',';
      if (r.target) out += to_string(*r.target);
    }
    out += '\n';
  }
  return out;
}

std::vector<Violation> validate_dataset(const Dataset& dataset, ValidationContext context) {
  std::vector<Violation> report;
  const auto& schema = dataset.schema;
  for (std::size_t i = 0; i < dataset.records.size(); ++i) {
    const auto& r = dataset.records[i];
    if (r.student_id.empty()) report.push_back({i, "student_id", "empty student_id"});
    for (const auto& a : schema.attributes) {
      if (r.values.count(a.name) == 0) report.push_back({i, a.name, "missing value"});
    }
    for (const auto& [name, value] : r.values) {
      if (!schema.has_attribute(name)) report.push_back({i, name, "attribute not in schema"});
    }
    if (context == ValidationContext::training && !r.target) {
      report.push_back({i, "", "unlabeled record"});
    }
  }
  return report;
}

}  // namespace edurisk
