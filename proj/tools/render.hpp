#pragma once

#include <string>
#include <string_view>

#include "netpers/persistence.hpp"

namespace netpers::cli {

std::string sha256_hex(std::string_view bytes);

// Document with property, births, deaths ("inf" for half-lines),
// multiplicities and the digest of the input.
std::string render_json(const Diagram& d, std::string_view property, std::string_view input_digest);

// Persistence diagram plot: one `point` marker per cornerpoint, the diagonal,
// and a `halfline` glyph rising to the infinity band for every half-line.
std::string render_svg(const Diagram& d, std::string_view title);

}  // namespace netpers::cli
