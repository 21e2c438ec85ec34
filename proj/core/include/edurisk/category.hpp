#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace edurisk {

/// Binary outcome of an assessment or of the final exam. The enumerator order
/// is the canonical branch order everywhere (Pass before Fail).
enum class Category : std::uint8_t { Pass = 0, Fail = 1 };

inline constexpr std::array<Category, 2> kCategories{Category::Pass, Category::Fail};

constexpr std::size_t index_of(Category c) noexcept { return static_cast<std::size_t>(c); }

std::string_view to_string(Category c) noexcept;

/// Case-insensitive "Pass" / "Fail"; surrounding whitespace is ignored.
std::optional<Category> parse_category(std::string_view text) noexcept;

}  // namespace edurisk
