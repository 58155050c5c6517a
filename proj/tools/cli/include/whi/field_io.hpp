#pragma once

#include <filesystem>

#include "waveholtz/grid.hpp"

namespace whi {

/// Writes `stem`.bin (raw little-endian doubles, row-major) and `stem`.txt,
/// a plain-text header with dim, extents and cell counts.
void write_field(const std::filesystem::path& stem, const waveholtz::ScalarField& field);

/// Inverse of write_field; values come back bit for bit.
waveholtz::ScalarField read_field(const std::filesystem::path& stem);

}  // namespace whi
