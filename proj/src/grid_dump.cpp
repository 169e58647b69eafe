#include "diraclab/grid_dump.hpp"
#include "diraclab/errors.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace diraclab {

namespace {

const char *const header = "node,re1,im1,re2,im2,re3,im3,re4,im4";

[[noreturn]] void fail(std::size_t line, const std::string &what) {
  throw ParseError("grid dump, line " + std::to_string(line) + ": " + what);
}

} // namespace

void write_grid_dump(std::ostream &os, const GridFunction4 &f) {
  const GridFunction4 fs = to_spatial(f);
  const Grid3 &g = fs.grid();
  os << "# n_per_axis=" << g.n() << " half_length=" << std::setprecision(17)
     << g.half_length() << '\n'
     << header << '\n';
  os << std::scientific << std::setprecision(16);
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    os << idx;
    for (int c = 0; c < 4; ++c)
      os << ',' << fs(c, idx).real() << ',' << fs(c, idx).imag();
    os << '\n';
  }
}

void write_grid_dump(const std::string &path, const GridFunction4 &f) {
  std::ofstream os(path);
  if (!os)
    throw Error("cannot open " + path + " for writing");
  write_grid_dump(os, f);
}

GridFunction4 read_grid_dump(std::istream &is) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(is, line))
    fail(lineno, "empty input");

  int n = 0;
  double L = 0.0;
  {
    std::istringstream meta(line);
    std::string hash, a, b;
    meta >> hash >> a >> b;
    if (hash != "#" || a.rfind("n_per_axis=", 0) != 0 || b.rfind("half_length=", 0) != 0)
      fail(lineno, "expected '# n_per_axis=<n> half_length=<L>'");
    try {
      std::size_t used = 0;
      const std::string nv = a.substr(11), lv = b.substr(12);
      n = std::stoi(nv, &used);
      if (used != nv.size())
        fail(lineno, "bad n_per_axis");
      L = std::stod(lv, &used);
      if (used != lv.size())
        fail(lineno, "bad half_length");
    } catch (const std::logic_error &) {
      fail(lineno, "bad grid metadata");
    }
  }
  Grid3 grid = [&] {
    try {
      return Grid3(n, L);
    } catch (const DomainError &e) {
      fail(lineno, e.what());
    }
  }();

  ++lineno;
  if (!std::getline(is, line) || line != header)
    fail(lineno, std::string("expected header '") + header + "'");

  GridFunction4 f(grid);
  for (std::size_t expect = 0; expect < grid.size(); ++expect) {
    ++lineno;
    if (!std::getline(is, line))
      fail(lineno, "truncated: expected " + std::to_string(grid.size()) + " nodes");
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    std::size_t node = 0;
    for (int col = 0; std::getline(row, cell, ','); ++col) {
      try {
        std::size_t used = 0;
        if (col == 0) {
          node = std::stoull(cell, &used);
        } else {
          vals.push_back(std::stod(cell, &used));
        }
        if (used != cell.size())
          fail(lineno, "trailing characters in '" + cell + "'");
      } catch (const std::logic_error &) {
        fail(lineno, "not a number: '" + cell + "'");
      }
    }
    if (node != expect)
      fail(lineno, "node index out of order");
    if (vals.size() != 8)
      fail(lineno, "expected 9 columns");
    for (int c = 0; c < 4; ++c)
      f(c, node) = cplx(vals[2 * c], vals[2 * c + 1]);
  }
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty())
      fail(lineno, "unexpected data after last node");
  }
  return f;
}

GridFunction4 read_grid_dump(const std::string &path) {
  std::ifstream is(path);
  if (!is)
    throw ParseError("cannot open " + path);
  return read_grid_dump(is);
}

} // namespace diraclab
