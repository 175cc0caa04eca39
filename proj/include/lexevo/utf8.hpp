#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace lexevo {

/// Byte offset of the first ill-formed UTF-8 sequence, if any.
std::optional<std::size_t> find_invalid_utf8(std::string_view bytes);

/// Number of code points; assumes valid UTF-8.
std::size_t utf8_length(std::string_view text);

}  // namespace lexevo
