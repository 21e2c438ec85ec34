#include "edurisk/tree.hpp"

#include <algorithm>
#include <utility>

#include "edurisk/error.hpp"

namespace edurisk {

std::string_view to_string(Criterion criterion) noexcept {
  return criterion == Criterion::gain_ratio ? "gain-ratio" : "info-gain";
}

std::optional<Criterion> parse_criterion(std::string_view text) noexcept {
  if (text == "gain-ratio") return Criterion::gain_ratio;
  if (text == "info-gain") return Criterion::info_gain;
  return std::nullopt;
}

TreeNode TreeNode::leaf(Category label, ClassCounts support) {
  TreeNode node;
  node.label_ = label;
  node.support_ = support;
  return node;
}

TreeNode TreeNode::internal(std::string attribute, std::vector<Branch> branches) {
  if (attribute.empty()) throw ValidationError("internal node needs an attribute");
  if (branches.empty()) throw ValidationError("internal node '" + attribute + "' has no branches");
  std::sort(branches.begin(), branches.end(),
            [](const Branch& a, const Branch& b) { return a.value < b.value; });
  for (std::size_t i = 1; i < branches.size(); ++i) {
    if (branches[i].value == branches[i - 1].value) {
      throw ValidationError("internal node '" + attribute + "' has duplicate branch " +
                            std::string(to_string(branches[i].value)));
    }
  }
  TreeNode node;
  node.attribute_ = std::move(attribute);
  for (const auto& b : branches) node.support_ += b.node.support();
  node.label_ = node.support_.majority();
  node.branches_ = std::move(branches);
  return node;
}

std::span<const Branch> TreeNode::branches() const noexcept { return branches_; }

const TreeNode* TreeNode::child(Category value) const noexcept {
  for (const auto& b : branches_) {
    if (b.value == value) return &b.node;
  }
  return nullptr;
}

std::size_t TreeNode::leaf_count() const noexcept {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& b : branches_) n += b.node.leaf_count();
  return n;
}

std::size_t TreeNode::depth() const noexcept {
  std::size_t d = 0;
  for (const auto& b : branches_) d = std::max(d, 1 + b.node.depth());
  return d;
}

bool TreeNode::operator==(const TreeNode& other) const {
  return attribute_ == other.attribute_ && label_ == other.label_ &&
         support_ == other.support_ && branches_ == other.branches_;
}

std::optional<std::string> select_attribute(const Dataset& dataset,
                                            std::span<const std::string> candidates,
                                            Criterion criterion) {
  std::vector<std::pair<std::size_t, const std::string*>> ordered;
  ordered.reserve(candidates.size());
  for (const auto& name : candidates) {
    auto pos = dataset.schema.index_of(name);
    if (!pos) throw UnknownAttributeError(name);
    ordered.emplace_back(*pos, &name);
  }
  std::sort(ordered.begin(), ordered.end());

  std::optional<std::string> best;
  double best_value = 0.0;
  for (const auto& [pos, name] : ordered) {
    const auto score = score_attribute(dataset, *name);
    if (score.gain <= kGainEpsilon) continue;
    double value = score.gain;
    if (criterion == Criterion::gain_ratio) {
      if (!score.gain_ratio) continue;
      value = *score.gain_ratio;
    }
    if (!best || value > best_value) {
      best = *name;
      best_value = value;
    }
  }
  return best;
}

namespace {

bool meets_min_support(const Dataset& dataset, const std::string& attribute, std::size_t min_support) {
  for (const auto& part : contingency(dataset, attribute)) {
    if (!part.empty() && part.total() < min_support) return false;
  }
  return true;
}

TreeNode grow(const Dataset& dataset, const std::vector<std::string>& candidates,
              Criterion criterion, const InductionParams& params, std::size_t depth) {
  const auto counts = class_counts(dataset);
  if (counts.distinct() <= 1) return TreeNode::leaf(counts.majority(), counts);
  if (params.max_depth && depth >= *params.max_depth) return TreeNode::leaf(counts.majority(), counts);

  std::vector<std::string> eligible;
  for (const auto& c : candidates) {
    if (meets_min_support(dataset, c, params.min_support)) eligible.push_back(c);
  }
  const auto chosen = select_attribute(dataset, eligible, criterion);
  if (!chosen) return TreeNode::leaf(counts.majority(), counts);

  std::vector<std::string> remaining;
  remaining.reserve(candidates.size() - 1);
  for (const auto& c : candidates) {
    if (c != *chosen) remaining.push_back(c);
  }

  // Only observed values get a branch; classify() falls back to this node's
  // majority for the rest, which is what an explicit majority leaf would say.
  std::vector<Branch> branches;
  for (auto value : kCategories) {
    auto subset = dataset.filtered(*chosen, value);
    if (subset.empty()) continue;
    branches.push_back({value, grow(subset, remaining, criterion, params, depth + 1)});
  }
  return TreeNode::internal(*chosen, std::move(branches));
}

}  // namespace

TreeNode induce_tree(const Dataset& dataset, Criterion criterion, const InductionParams& params) {
  if (dataset.empty()) throw ValidationError("cannot induce a tree from an empty dataset");
  if (params.min_support < 1) throw ValidationError("min_support must be at least 1");
  if (params.max_depth && *params.max_depth < 1) throw ValidationError("max_depth must be positive");
  for (const auto& v : validate_dataset(dataset, ValidationContext::training)) {
    throw ValidationError("record " + std::to_string(v.record_index + 1) +
                          (v.attribute.empty() ? "" : " (" + v.attribute + ")") + ": " + v.message);
  }
  return grow(dataset, dataset.schema.predictor_names(), criterion, params, 0);
}

Classification classify(const TreeNode& tree, const StudentRecord& record) {
  Classification result{tree.label(), false, {}};
  const TreeNode* node = &tree;
  while (!node->is_leaf()) {
    const auto value = record.value_of(node->attribute());
    if (!value) throw UnknownAttributeError(node->attribute());
    result.path.push_back({node->attribute(), *value});
    const TreeNode* next = node->child(*value);
    if (next == nullptr) break;
    node = next;
  }
  result.label = node->label();
  result.at_risk = result.label == Category::Fail;
  return result;
}

namespace {

void collect_rules(const TreeNode& node, std::vector<Condition>& path, std::vector<Rule>& out) {
  if (node.is_leaf()) {
    out.push_back({path, node.label(), node.support()});
    return;
  }
  for (const auto& b : node.branches()) {
    path.push_back({node.attribute(), b.value});
    collect_rules(b.node, path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<Rule> extract_rules(const TreeNode& tree) {
  std::vector<Rule> rules;
  std::vector<Condition> path;
  collect_rules(tree, path, rules);
  return rules;
}

bool matches(const Rule& rule, const StudentRecord& record) {
  return std::all_of(rule.conditions.begin(), rule.conditions.end(), [&](const Condition& c) {
    return record.value_of(c.attribute) == c.value;
  });
}

std::optional<Category> predict(std::span<const Rule> rules, const StudentRecord& record) {
  for (const auto& rule : rules) {
    if (matches(rule, record)) return rule.conclusion;
  }
  return std::nullopt;
}

std::string format_rule(const Rule& rule, std::string_view target_name) {
  std::string out = "IF ";
  if (rule.conditions.empty()) out += "true";
  for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
    if (i > 0) out += " AND ";
    const auto& c = rule.conditions[i];
    out += c.attribute;
    out += " = \"";
    out += to_string(c.value);
    out += '"';
  }
  out += " THEN ";
  out += target_name;
  out += " = \"";
  out += to_string(rule.conclusion);
  out += '"';
  return out;
}

}  // namespace edurisk
