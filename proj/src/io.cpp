#include "psdo/io.hpp"

#include "psdo/error.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace psdo {

namespace {

constexpr char kMagic[8] = {'P', 'S', 'D', 'O', 'A', 'R', 'R', '1'};

std::size_t product(const std::vector<std::size_t>& shape) {
  std::size_t p = 1;
  for (auto s : shape) p *= s;
  return p;
}

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

void put_double(std::ostream& out, double x) { put_u64(out, std::bit_cast<std::uint64_t>(x)); }
double get_double(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

ArrayFile from_header(const nlohmann::json& h) {
  ArrayFile a;
  try {
    a.shape = h.at("shape").get<std::vector<std::size_t>>();
    if (h.value("dtype", "complex128") != "complex128") throw Error(Errc::io_error, "unsupported dtype");
    if (h.value("layout", "row-major") != "row-major") throw Error(Errc::io_error, "unsupported layout");
    if (h.contains("grid")) a.grid = grid_from_json(h["grid"]);
    a.kind = h.value("kind", "");
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::io_error, std::string("malformed array header: ") + e.what());
  }
  return a;
}

}  // namespace

nlohmann::json grid_to_json(const GridSpec& g) {
  return {{"d", g.d}, {"n", g.n}, {"mode", std::string(mode_name(g.mode))}};
}

GridSpec grid_from_json(const nlohmann::json& j) {
  try {
    return GridSpec::make(j.at("d").get<int>(), j.at("n").get<int>(), parse_mode(j.value("mode", "real")));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_params, std::string("malformed grid: ") + e.what());
  }
}

nlohmann::json ArrayFile::header() const {
  nlohmann::json h;
  h["shape"] = shape;
  h["dtype"] = "complex128";
  h["layout"] = "row-major";
  if (grid) h["grid"] = grid_to_json(*grid);
  if (!kind.empty()) h["kind"] = kind;
  return h;
}

ArrayFile make_array(const Signal& f) {
  return {{f.size()}, f.grid, "signal", f.data};
}

ArrayFile make_array(const Symbol& a, const std::string& kind) {
  return {{a.points(), a.points()}, a.grid, kind, a.data};
}

ArrayFile make_array(const OperatorMatrix& T) {
  return {{T.dim(), T.dim()}, T.grid, "operator", T.data};
}

namespace {

void require_known_extension(const std::filesystem::path& path) {
  const auto ext = path.extension();
  if (ext != ".bin" && ext != ".csv") {
    throw Error(Errc::io_error, "'" + path.string() + "': array files must end in .csv or .bin");
  }
}

void require_length(const ArrayFile& a, std::size_t expected, const char* what) {
  if (a.data.size() != expected) {
    throw Error(Errc::dim_mismatch, std::string(what) + " needs " + std::to_string(expected) + " values, file holds " +
                                        std::to_string(a.data.size()));
  }
}
}  // namespace

void write_array(const std::filesystem::path& path, const ArrayFile& a) {
  require_known_extension(path);
  if (product(a.shape) != a.data.size()) throw Error(Errc::dim_mismatch, "array shape does not match payload");
  const std::string header = a.header().dump();
  if (path.extension() == ".bin") {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot open '" + path.string() + "' for writing");
    out.write(kMagic, sizeof kMagic);
    put_u64(out, header.size());
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    for (const auto& v : a.data) {
      put_double(out, v.real());
      put_double(out, v.imag());
    }
    if (!out) throw Error(Errc::io_error, "write failed for '" + path.string() + "'");
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(Errc::io_error, "cannot open '" + path.string() + "' for writing");
  out << "# " << header << "\nre,im\n";
  char line[80];
  for (const auto& v : a.data) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", v.real(), v.imag());
    out << line;
  }
  if (!out) throw Error(Errc::io_error, "write failed for '" + path.string() + "'");
}

ArrayFile read_array(const std::filesystem::path& path) {
  require_known_extension(path);
  if (path.extension() == ".bin") {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open '" + path.string() + "'");
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0) throw Error(Errc::io_error, "'" + path.string() + "' is not an array file");
    const std::uint64_t len = get_u64(in);
    if (!in || len > (1ULL << 26)) throw Error(Errc::io_error, "corrupt array header in '" + path.string() + "'");
    std::string header(len, '\0');
    in.read(header.data(), static_cast<std::streamsize>(len));
    nlohmann::json h = nlohmann::json::parse(header, nullptr, false);
    if (!in || h.is_discarded()) throw Error(Errc::io_error, "corrupt array header in '" + path.string() + "'");
    ArrayFile a = from_header(h);
    a.data.resize(product(a.shape));
    for (auto& v : a.data) {
      const double re = get_double(in);
      const double im = get_double(in);
      v = {re, im};
    }
    if (!in) throw Error(Errc::io_error, "truncated payload in '" + path.string() + "'");
    return a;
  }
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw Error(Errc::io_error, "'" + path.string() + "' lacks a '# {header}' first line");
  }
  nlohmann::json h = nlohmann::json::parse(line.substr(2), nullptr, false);
  if (h.is_discarded()) throw Error(Errc::io_error, "corrupt array header in '" + path.string() + "'");
  ArrayFile a = from_header(h);
  if (!std::getline(in, line) || line.rfind("re,im", 0) != 0) {
    throw Error(Errc::io_error, "'" + path.string() + "' lacks the 're,im' column line");
  }
  a.data.reserve(product(a.shape));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(Errc::io_error, "bad row '" + line + "' in '" + path.string() + "'");
    try {
      a.data.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    } catch (const std::logic_error&) {
      throw Error(Errc::io_error, "bad row '" + line + "' in '" + path.string() + "'");
    }
  }
  if (a.data.size() != product(a.shape)) {
    throw Error(Errc::io_error, "'" + path.string() + "' holds " + std::to_string(a.data.size()) +
                                    " values but its shape needs " + std::to_string(product(a.shape)));
  }
  return a;
}

Signal as_signal(const ArrayFile& a, const GridSpec& grid) {
  require_length(a, grid.size(), "signal");
  return Signal(grid, a.data);
}

Symbol as_symbol(const ArrayFile& a, const GridSpec& grid) {
  require_length(a, grid.size() * grid.size(), "symbol");
  return Symbol(grid, a.data);
}

OperatorMatrix as_operator(const ArrayFile& a, const GridSpec& grid) {
  require_length(a, grid.size() * grid.size(), "operator");
  return OperatorMatrix(grid, a.data);
}

}  // namespace psdo
