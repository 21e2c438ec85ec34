#pragma once

#include <string>
#include <string_view>

#include "edurisk/schema.hpp"
#include "edurisk/tree.hpp"

namespace edurisk {

inline constexpr int kModelFormatVersion = 1;

/// A trained tree together with the schema its records must follow.
struct Model {
  AttributeSchema schema;
  Criterion criterion = Criterion::gain_ratio;
  TreeNode tree;
};

/// JSON model file, two-space indented, keys sorted.
std::string serialize_model(const Model& model);

/// Throws FormatError on malformed JSON, unknown keys, a different
/// format_version, or a tree that breaks the node invariants.
Model deserialize_model(std::string_view text);

}  // namespace edurisk
