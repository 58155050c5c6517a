#include "whi/field_io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace whi {

static_assert(std::endian::native == std::endian::little, "field dumps assume a little-endian host");

namespace {

std::filesystem::path with_suffix(std::filesystem::path stem, const char* ext) {
  stem += ext;
  return stem;
}

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_field(const std::filesystem::path& stem, const waveholtz::ScalarField& field) {
  const auto& g = field.grid();
  {
    std::ofstream txt(with_suffix(stem, ".txt"));
    txt << "dim " << g.dim() << "\nextents";
    for (int d = 0; d < g.dim(); ++d) txt << ' ' << exact(g.lo(d)) << ' ' << exact(g.hi(d));
    txt << "\nn";
    for (int d = 0; d < g.dim(); ++d) txt << ' ' << g.cells(d);
    txt << "\nvalues " << field.size() << "\nformat float64 little-endian row-major\n";
    if (!txt) throw std::runtime_error("cannot write " + with_suffix(stem, ".txt").string());
  }
  std::ofstream bin(with_suffix(stem, ".bin"), std::ios::binary);
  const auto values = field.values();
  bin.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!bin) throw std::runtime_error("cannot write " + with_suffix(stem, ".bin").string());
}

waveholtz::ScalarField read_field(const std::filesystem::path& stem) {
  std::ifstream txt(with_suffix(stem, ".txt"));
  if (!txt) throw std::runtime_error("cannot read " + with_suffix(stem, ".txt").string());
  int dim = 0;
  double lo[2]{}, hi[2]{};
  int n[2]{};
  std::size_t count = 0;
  std::string line, key;
  while (std::getline(txt, line)) {
    std::istringstream ss(line);
    ss >> key;
    if (key == "dim") {
      ss >> dim;
    } else if (key == "extents") {
      for (int d = 0; d < dim; ++d) ss >> lo[d] >> hi[d];
    } else if (key == "n") {
      for (int d = 0; d < dim; ++d) ss >> n[d];
    } else if (key == "values") {
      ss >> count;
    }
    if (!ss && key != "format") throw std::runtime_error("bad field header line: " + line);
  }
  if (dim != 1 && dim != 2) throw std::runtime_error("bad field header: dim");
  const auto grid = dim == 1 ? waveholtz::UniformGrid::line(lo[0], hi[0], n[0])
                             : waveholtz::UniformGrid::box({lo[0], lo[1]}, {hi[0], hi[1]}, {n[0], n[1]});
  if (grid.node_count() != count) throw std::runtime_error("field header: value count does not match the grid");

  std::vector<double> values(count);
  std::ifstream bin(with_suffix(stem, ".bin"), std::ios::binary);
  bin.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(count * sizeof(double)));
  if (!bin || bin.peek() != std::char_traits<char>::eof())
    throw std::runtime_error("field data size does not match " + with_suffix(stem, ".txt").string());
  return waveholtz::ScalarField(grid, std::move(values));
}

}  // namespace whi
