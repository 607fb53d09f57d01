#include "bmolab/csv.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace bmolab {

void write_csv(const GridFunction& f, std::ostream& os) {
  const Grid& g = f.grid();
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << g.dim() << ',' << g.cells_per_axis() << ',' << g.side() << '\n';
  for (double v : f.values()) os << v << '\n';
}

GridFunction read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("csv: missing header row");
  std::istringstream header(line);
  int dim = 0;
  std::size_t n = 0;
  double side = 0.0;
  char c1 = 0, c2 = 0;
  if (!(header >> dim >> c1 >> n >> c2 >> side) || c1 != ',' || c2 != ',') {
    throw ConfigError("csv: header must read 'dim,N,L', got '" + line + "'");
  }
  Grid grid(dim, side, n);
  std::vector<double> values;
  values.reserve(grid.cell_count());
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    try {
      values.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw ConfigError("csv: not a number: '" + line + "'");
    }
  }
  return GridFunction(grid, std::move(values));
}

void save_csv(const GridFunction& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  write_csv(f, os);
}

GridFunction load_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open '" + path + "'");
  return read_csv(is);
}

}  // namespace bmolab
