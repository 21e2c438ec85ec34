#include "edurisk/metrics.hpp"

#include <cmath>

#include "edurisk/error.hpp"

namespace edurisk {
namespace {

void require_attribute(const Dataset& dataset, std::string_view attribute) {
  if (!dataset.schema.has_attribute(attribute)) throw UnknownAttributeError(std::string(attribute));
}

Category value_or_throw(const StudentRecord& r, std::string_view attribute) {
  auto v = r.value_of(attribute);
  if (!v) {
    throw ValidationError("record '" + r.student_id + "' has no value for '" +
                          std::string(attribute) + "'");
  }
  return *v;
}

Category target_or_throw(const StudentRecord& r) {
  if (!r.target) throw ValidationError("record '" + r.student_id + "' is unlabeled");
  return *r.target;
}

}  // namespace

std::size_t ClassCounts::distinct() const noexcept {
  return static_cast<std::size_t>(counts_[0] > 0) + static_cast<std::size_t>(counts_[1] > 0);
}

ClassCounts& ClassCounts::operator+=(const ClassCounts& other) noexcept {
  counts_[0] += other.counts_[0];
  counts_[1] += other.counts_[1];
  return *this;
}

Category ClassCounts::majority() const noexcept {
  return count(Category::Pass) > count(Category::Fail) ? Category::Pass : Category::Fail;
}

double ClassCounts::purity() const noexcept {
  if (empty()) return 0.0;
  return static_cast<double>(count(majority())) / static_cast<double>(total());
}

ClassCounts class_counts(const Dataset& dataset) {
  ClassCounts counts;
  for (const auto& r : dataset.records) counts.add(target_or_throw(r));
  return counts;
}

ClassCounts class_counts(const Dataset& dataset, std::string_view attribute) {
  require_attribute(dataset, attribute);
  ClassCounts counts;
  for (const auto& r : dataset.records) counts.add(value_or_throw(r, attribute));
  return counts;
}

double entropy(std::span<const std::size_t> counts) noexcept {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) return 0.0;
  const double n = static_cast<double>(total);
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  // A single non-empty class gives -1*log2(1) = -0.0.
  return h <= 0.0 ? 0.0 : h;
}

Contingency contingency(const Dataset& dataset, std::string_view attribute) {
  require_attribute(dataset, attribute);
  Contingency table{};
  for (const auto& r : dataset.records) {
    table[index_of(value_or_throw(r, attribute))].add(target_or_throw(r));
  }
  return table;
}

double information_gain(const Contingency& table) noexcept {
  ClassCounts whole;
  for (const auto& part : table) whole += part;
  if (whole.empty()) return 0.0;
  const double n = static_cast<double>(whole.total());
  double remainder = 0.0;
  for (const auto& part : table) {
    if (part.empty()) continue;
    remainder += static_cast<double>(part.total()) / n * entropy(part);
  }
  const double gain = entropy(whole) - remainder;
  return gain > 0.0 ? gain : 0.0;
}

double split_info(const Contingency& table) noexcept {
  const std::array<std::size_t, 2> sizes{table[0].total(), table[1].total()};
  return entropy(sizes);
}

double information_gain(const Dataset& dataset, std::string_view attribute) {
  return information_gain(contingency(dataset, attribute));
}

double split_info(const Dataset& dataset, std::string_view attribute) {
  return entropy(class_counts(dataset, attribute));
}

std::optional<double> gain_ratio(double gain, double split) noexcept {
  if (!(split > 0.0)) return std::nullopt;
  return gain / split;
}

AttributeScore score_attribute(const Dataset& dataset, std::string_view attribute) {
  const auto table = contingency(dataset, attribute);
  AttributeScore score;
  score.attribute = std::string(attribute);
  score.gain = information_gain(table);
  score.split_info = split_info(table);
  score.gain_ratio = gain_ratio(score.gain, score.split_info);
  return score;
}

std::vector<AttributeScore> score_all(const Dataset& dataset) {
  std::vector<AttributeScore> scores;
  scores.reserve(dataset.schema.attributes.size());
  for (const auto& a : dataset.schema.attributes) scores.push_back(score_attribute(dataset, a.name));
  return scores;
}

}  // namespace edurisk
