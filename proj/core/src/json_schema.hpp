#pragma once

#include <json.hpp>

#include <initializer_list>
#include <string_view>

#include "edurisk/error.hpp"
#include "edurisk/metrics.hpp"
#include "edurisk/schema.hpp"

namespace edurisk::detail {

using json = nlohmann::json;

void require_keys(const json& object, std::string_view what,
                  std::initializer_list<std::string_view> required,
                  std::initializer_list<std::string_view> optional = {});

json counts_to_json(const ClassCounts& counts);
ClassCounts counts_from_json(const json& object);

json schema_to_json(const AttributeSchema& schema);
AttributeSchema schema_from_json(const json& object);

}  // namespace edurisk::detail
