#include "edurisk/category.hpp"

#include <algorithm>
#include <cctype>

namespace edurisk {

std::string_view to_string(Category c) noexcept {
  return c == Category::Pass ? "Pass" : "Fail";
}

std::optional<Category> parse_category(std::string_view text) noexcept {
  auto is_space = [](unsigned char ch) { return std::isspace(ch) != 0; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  auto iequals = [](std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
             return std::tolower(x) == std::tolower(y);
           });
  };
  if (iequals(text, "pass")) return Category::Pass;
  if (iequals(text, "fail")) return Category::Fail;
  return std::nullopt;
}

}  // namespace edurisk
