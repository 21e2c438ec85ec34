#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edurisk/category.hpp"
#include "edurisk/schema.hpp"

namespace edurisk {

/// Frequency of each category in some collection of records.
class ClassCounts {
 public:
  ClassCounts() = default;
  ClassCounts(std::size_t pass, std::size_t fail) : counts_{pass, fail} {}

  std::size_t count(Category c) const noexcept { return counts_[index_of(c)]; }
  std::size_t total() const noexcept { return counts_[0] + counts_[1]; }
  bool empty() const noexcept { return total() == 0; }
  /// Number of categories with a non-zero count.
  std::size_t distinct() const noexcept;

  void add(Category c, std::size_t n = 1) noexcept { counts_[index_of(c)] += n; }
  ClassCounts& operator+=(const ClassCounts& other) noexcept;

  /// Most frequent category; ties (including the empty case) go to Fail.
  Category majority() const noexcept;
  /// Share of the majority category, 0 when empty.
  double purity() const noexcept;

  std::span<const std::size_t> raw() const noexcept { return counts_; }

  bool operator==(const ClassCounts&) const = default;

 private:
  std::array<std::size_t, 2> counts_{};
};

/// Target counts. Throws ValidationError if any record is unlabeled.
ClassCounts class_counts(const Dataset& dataset);
/// Value counts of one predictor attribute.
ClassCounts class_counts(const Dataset& dataset, std::string_view attribute);

/// Shannon entropy in bits; 0 log 0 is taken as 0.
double entropy(std::span<const std::size_t> counts) noexcept;
inline double entropy(const ClassCounts& counts) noexcept { return entropy(counts.raw()); }

/// Target counts within each value of one attribute, indexed by index_of(value).
using Contingency = std::array<ClassCounts, 2>;
Contingency contingency(const Dataset& dataset, std::string_view attribute);

double information_gain(const Contingency& table) noexcept;
double split_info(const Contingency& table) noexcept;

/// Entropy(S) minus the size-weighted entropy of the target within each
/// partition of `attribute`.
double information_gain(const Dataset& dataset, std::string_view attribute);
/// Entropy of the partition sizes of `attribute`; independent of the target.
double split_info(const Dataset& dataset, std::string_view attribute);
/// gain / split, absent when split is 0.
std::optional<double> gain_ratio(double gain, double split) noexcept;

struct AttributeScore {
  std::string attribute;
  double gain = 0.0;
  double split_info = 0.0;
  std::optional<double> gain_ratio;

  bool operator==(const AttributeScore&) const = default;
};

AttributeScore score_attribute(const Dataset& dataset, std::string_view attribute);
/// One score per predictor, in schema order.
std::vector<AttributeScore> score_all(const Dataset& dataset);

}  // namespace edurisk
