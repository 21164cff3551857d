#pragma once

#include <filesystem>
#include <variant>
#include <vector>

#include "vnlw/field.hpp"

namespace vnlw {

/// Field CSV format: header `x,y,re,im` (dim 1) or `x1,x2,y1,y2,re,im`
/// (dim 2), one row per node pair, row-major (x outer, y inner), values with
/// 17 significant digits so round-trips are exact.
void write_field_csv(const std::filesystem::path& path, const BipartiteField& f);
void write_field_csv(const std::filesystem::path& path, const ClosedField& f);

using LoadedField = std::variant<BipartiteField, ClosedField>;

/// Reads a field CSV and classifies it as interior or closed by row count
/// against the expected domain. Coordinates are validated against the grid.
/// Throws ParseError on malformed input, ValidationError on a grid mismatch.
LoadedField read_field_csv(const std::filesystem::path& path, const Domain& domain);

void write_norms_csv(const std::filesystem::path& path,
                     const std::vector<double>& times,
                     const std::vector<double>& norms);

}  // namespace vnlw
