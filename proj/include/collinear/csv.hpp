#pragma once

#include "collinear/dataset.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace collinear {

/** Reads a comma-delimited file with a mandatory header row.
 *
 * Every cell after the header must parse completely as a finite decimal
 * number. Errors name the offending line and column. Quoting is not
 * supported; blank trailing lines are ignored.
 */
Dataset read_csv(const std::filesystem::path& path, const std::string& response_column);
Dataset parse_csv(std::istream& in, const std::string& response_column,
                  const std::string& source = "<input>");

/// Writes with round-trip precision, columns in dataset order.
void write_csv(const Dataset& data, std::ostream& out);
void write_csv(const Dataset& data, const std::filesystem::path& path);

}  // namespace collinear
