#pragma once

#include <iosfwd>
#include <string>

#include "bmolab/core.hpp"

namespace bmolab {

// Fixture format: a header row "dim,N,L" carrying the three grid parameters,
// then one cell value per line in linear cell order. Origin is always zero.
void write_csv(const GridFunction& f, std::ostream& os);
GridFunction read_csv(std::istream& is);

void save_csv(const GridFunction& f, const std::string& path);
GridFunction load_csv(const std::string& path);

}  // namespace bmolab
