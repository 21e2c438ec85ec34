#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edurisk/category.hpp"
#include "edurisk/metrics.hpp"
#include "edurisk/schema.hpp"

namespace edurisk {

enum class Criterion { gain_ratio, info_gain };

/// "gain-ratio" / "info-gain"; the same spelling the CLI and model files use.
std::string_view to_string(Criterion criterion) noexcept;
std::optional<Criterion> parse_criterion(std::string_view text) noexcept;

struct InductionParams {
  /// A split is only taken when every non-empty branch holds at least this
  /// many records.
  std::size_t min_support = 1;
  /// Maximum number of tests on any root-to-leaf path; unlimited when absent.
  std::optional<std::size_t> max_depth;
};

/// Gains at or below this are round-off, not information.
inline constexpr double kGainEpsilon = 1e-12;

struct Branch;

/// Immutable decision-tree node: either a leaf carrying a decision or an
/// internal node testing one attribute with one branch per observed value.
class TreeNode {
 public:
  static TreeNode leaf(Category label, ClassCounts support);
  static TreeNode internal(std::string attribute, std::vector<Branch> branches);

  bool is_leaf() const noexcept { return attribute_.empty(); }

  /// Leaf decision, or for an internal node the majority of its support.
  Category label() const noexcept { return label_; }
  const ClassCounts& support() const noexcept { return support_; }
  double purity() const noexcept { return support_.purity(); }

  /// Tested attribute; empty for leaves.
  const std::string& attribute() const noexcept { return attribute_; }
  std::span<const Branch> branches() const noexcept;
  /// Branch for `value`, nullptr if the value was not seen at this node.
  const TreeNode* child(Category value) const noexcept;

  std::size_t leaf_count() const noexcept;
  std::size_t depth() const noexcept;

  bool operator==(const TreeNode& other) const;

 private:
  TreeNode() = default;

  std::string attribute_;
  std::vector<Branch> branches_;
  Category label_ = Category::Fail;
  ClassCounts support_;
};

struct Branch {
  Category value;
  TreeNode node;

  bool operator==(const Branch& other) const { return value == other.value && node == other.node; }
};

/// The candidate with the highest criterion value, ties to the smallest
/// schema position. Under gain ratio, zero split-info candidates are skipped.
/// Absent when nothing has positive gain or `candidates` is empty.
std::optional<std::string> select_attribute(const Dataset& dataset,
                                            std::span<const std::string> candidates,
                                            Criterion criterion);

/// Top-down induction without pruning. Throws ValidationError for an empty
/// or partially unlabeled dataset.
TreeNode induce_tree(const Dataset& dataset, Criterion criterion = Criterion::gain_ratio,
                     const InductionParams& params = {});

struct Condition {
  std::string attribute;
  Category value;

  bool operator==(const Condition&) const = default;
};

struct Classification {
  Category label;
  bool at_risk;
  std::vector<Condition> path;
};

/// Walks the tree with the record's values. If a value has no branch the
/// current node's majority is returned with the partial path. Throws
/// UnknownAttributeError when the record lacks a tested attribute.
Classification classify(const TreeNode& tree, const StudentRecord& record);

struct Rule {
  std::vector<Condition> conditions;
  Category conclusion;
  ClassCounts support;

  bool operator==(const Rule&) const = default;
};

/// One rule per leaf, depth first, Pass branches before Fail branches.
std::vector<Rule> extract_rules(const TreeNode& tree);

bool matches(const Rule& rule, const StudentRecord& record);
/// Conclusion of the first matching rule.
std::optional<Category> predict(std::span<const Rule> rules, const StudentRecord& record);

/// `IF Quiz 2 = "Pass" AND Quiz 1 = "Fail" THEN Final = "Fail"`.
std::string format_rule(const Rule& rule, std::string_view target_name);

}  // namespace edurisk
