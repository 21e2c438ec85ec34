#include "edurisk/model_io.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "edurisk/error.hpp"
#include "json_schema.hpp"

namespace edurisk {
namespace detail {

void require_keys(const json& object, std::string_view what,
                  std::initializer_list<std::string_view> required,
                  std::initializer_list<std::string_view> optional) {
  if (!object.is_object()) throw FormatError(std::string(what) + " must be a JSON object");
  for (auto key : required) {
    if (!object.contains(key)) {
      throw FormatError(std::string(what) + " is missing key '" + std::string(key) + "'");
    }
  }
  for (const auto& [key, value] : object.items()) {
    const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                       std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) throw FormatError(std::string(what) + " has unknown key '" + key + "'");
  }
}

json counts_to_json(const ClassCounts& counts) {
  json out = json::object();
  for (auto c : kCategories) {
    if (counts.count(c) > 0) out[std::string(to_string(c))] = counts.count(c);
  }
  return out;
}

ClassCounts counts_from_json(const json& object) {
  if (!object.is_object()) throw FormatError("support must be a JSON object");
  ClassCounts counts;
  for (const auto& [key, value] : object.items()) {
    const auto cat = parse_category(key);
    if (!cat || key != to_string(*cat)) throw FormatError("unknown support label '" + key + "'");
    if (!value.is_number_unsigned()) {
      throw FormatError("support count for '" + key + "' must be a non-negative integer");
    }
    counts.add(*cat, value.get<std::size_t>());
  }
  return counts;
}

json schema_to_json(const AttributeSchema& schema) {
  json attributes = json::array();
  for (const auto& a : schema.attributes) {
    json entry = {{"name", a.name}, {"kind", std::string(to_string(a.kind))}};
    if (auto t = schema.threshold_for(a.name)) entry["threshold"] = *t;
    attributes.push_back(std::move(entry));
  }
  return {
      {"course_type", std::string(to_string(schema.course_type))},
      {"target", schema.target_name},
      {"attributes", std::move(attributes)},
      {"coursework_max", schema.coursework_max},
      {"final_max", schema.final_max},
      {"total_pass_mark", schema.total_pass_mark},
      {"fail_rate_threshold", schema.fail_rate_threshold},
  };
}

AttributeSchema schema_from_json(const json& object) {
  require_keys(object, "schema",
               {"course_type", "target", "attributes", "coursework_max", "final_max",
                "total_pass_mark", "fail_rate_threshold"});
  AttributeSchema schema;
  const auto course = parse_course_type(object.at("course_type").get<std::string>());
  if (!course) throw FormatError("schema has unknown course_type");
  schema.course_type = *course;
  schema.target_name = object.at("target").get<std::string>();
  schema.coursework_max = object.at("coursework_max").get<double>();
  schema.final_max = object.at("final_max").get<double>();
  schema.total_pass_mark = object.at("total_pass_mark").get<double>();
  schema.fail_rate_threshold = object.at("fail_rate_threshold").get<double>();
  const auto& attributes = object.at("attributes");
  if (!attributes.is_array()) throw FormatError("schema attributes must be an array");
  std::size_t position = 0;
  for (const auto& entry : attributes) {
    require_keys(entry, "schema attribute", {"name", "kind"}, {"threshold"});
    const auto name = entry.at("name").get<std::string>();
    const auto kind = parse_attribute_kind(entry.at("kind").get<std::string>());
    if (!kind) throw FormatError("attribute '" + name + "' has unknown kind");
    schema.attributes.push_back({name, *kind, position++});
    if (entry.contains("threshold")) schema.thresholds[name] = entry.at("threshold").get<double>();
  }
  try {
    validate_schema(schema);
  } catch (const ValidationError& e) {
    throw FormatError(std::string("invalid schema: ") + e.what());
  }
  return schema;
}

}  // namespace detail

namespace {

using detail::json;

json node_to_json(const TreeNode& node) {
  if (node.is_leaf()) {
    return {{"type", "leaf"},
            {"label", std::string(to_string(node.label()))},
            {"support", detail::counts_to_json(node.support())}};
  }
  json branches = json::object();
  for (const auto& b : node.branches()) branches[std::string(to_string(b.value))] = node_to_json(b.node);
  return {{"type", "internal"},
          {"attribute", node.attribute()},
          {"branches", std::move(branches)},
          {"support", detail::counts_to_json(node.support())}};
}

TreeNode node_from_json(const json& object, const AttributeSchema& schema,
                        std::set<std::string>& on_path) {
  if (!object.is_object() || !object.contains("type")) throw FormatError("tree node needs a 'type'");
  const auto type = object.at("type").get<std::string>();
  if (type == "leaf") {
    detail::require_keys(object, "leaf node", {"type", "label", "support"});
    const auto label_text = object.at("label").get<std::string>();
    const auto label = parse_category(label_text);
    if (!label || label_text != to_string(*label)) {
      throw FormatError("leaf label must be Pass or Fail, found '" + label_text + "'");
    }
    const auto support = detail::counts_from_json(object.at("support"));
    if (!support.empty() && support.majority() != *label) {
      throw FormatError("leaf label " + label_text + " is not the majority of its support");
    }
    return TreeNode::leaf(*label, support);
  }
  if (type != "internal") throw FormatError("unknown node type '" + type + "'");

  detail::require_keys(object, "internal node", {"type", "attribute", "branches", "support"});
  const auto attribute = object.at("attribute").get<std::string>();
  if (!schema.has_attribute(attribute)) {
    throw FormatError("tree tests attribute '" + attribute + "' which is not in the schema");
  }
  if (!on_path.insert(attribute).second) {
    throw FormatError("attribute '" + attribute + "' is tested twice on one path");
  }
  const auto& branch_json = object.at("branches");
  if (!branch_json.is_object() || branch_json.empty()) {
    throw FormatError("internal node '" + attribute + "' needs at least one branch");
  }
  std::vector<Branch> branches;
  for (const auto& [key, child] : branch_json.items()) {
    const auto value = parse_category(key);
    if (!value || key != to_string(*value)) throw FormatError("unknown branch value '" + key + "'");
    branches.push_back({*value, node_from_json(child, schema, on_path)});
  }
  on_path.erase(attribute);

  auto node = TreeNode::internal(attribute, std::move(branches));
  if (node.support() != detail::counts_from_json(object.at("support"))) {
    throw FormatError("support of node '" + attribute + "' does not equal the sum of its branches");
  }
  return node;
}

}  // namespace

std::string serialize_model(const Model& model) {
  const json doc = {
      {"format_version", kModelFormatVersion},
      {"criterion", std::string(to_string(model.criterion))},
      {"schema", detail::schema_to_json(model.schema)},
      {"tree", node_to_json(model.tree)},
  };
  return doc.dump(2) + "\n";
}

Model deserialize_model(std::string_view text) {
  try {
    const auto doc = json::parse(text);
    detail::require_keys(doc, "model", {"format_version", "criterion", "schema", "tree"});
    const auto& version = doc.at("format_version");
    if (!version.is_number_integer() || version.get<int>() != kModelFormatVersion) {
      throw FormatError("unsupported model format_version " + version.dump() + " (expected " +
                        std::to_string(kModelFormatVersion) + ")");
    }
    const auto criterion = parse_criterion(doc.at("criterion").get<std::string>());
    if (!criterion) throw FormatError("unknown criterion " + doc.at("criterion").dump());
    auto schema = detail::schema_from_json(doc.at("schema"));
    std::set<std::string> on_path;
    auto tree = node_from_json(doc.at("tree"), schema, on_path);
    return Model{std::move(schema), *criterion, std::move(tree)};
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed model file: ") + e.what());
  } catch (const ValidationError& e) {
    throw FormatError(std::string("invalid tree: ") + e.what());
  }
}

}  // namespace edurisk
