#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace ordstruct {

struct BookInfo {
  int id;
  std::string_view name;
  std::string_view abbrev;
};

/// Canonical numbering of the parallel Bible corpus (1 = Genesis ... 66 = Revelation).
std::optional<BookInfo> book_info(int id);

/// Short label for outputs: the abbreviation when known, the number otherwise.
std::string book_label(int id);

/// Matthew, Mark, Luke, John, Acts, Revelation.
inline constexpr std::array<int, 6> kDefaultBooks{40, 41, 42, 43, 44, 66};

}  // namespace ordstruct
