#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace assure::csv {

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string Escape(std::string_view field);

// Splits one record. Supports double-quoted fields with "" escapes. Returns
// std::nullopt on an unterminated quote.
std::optional<std::vector<std::string>> SplitLine(std::string_view line);

}  // namespace assure::csv
