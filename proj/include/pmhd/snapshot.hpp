#pragma once

#include "pmhd/fields.hpp"

#include <iosfwd>
#include <string>

namespace pmhd {

/// Text snapshot: a header line "nx ny dx dy location", an optional
/// "# origin x0 y0" line, then one line of values per grid row (j), each
/// printed with 17 significant digits.
void writeSnapshot(std::ostream& os, const ScalarField& f);
ScalarField readSnapshot(std::istream& is);

void writeSnapshotFile(const std::string& path, const ScalarField& f);
ScalarField readSnapshotFile(const std::string& path);

}  // namespace pmhd
