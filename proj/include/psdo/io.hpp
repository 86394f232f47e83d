#pragma once

// ArrayFile: complex128 arrays with a JSON header, stored as CSV (.csv) or
// raw little-endian binary (.bin).
//
//   .csv  line 1 "# <header json>", line 2 "re,im", then one value per line
//         printed with 17 significant digits.
//   .bin  "PSDOARR1", u64 LE header length, header json, interleaved
//         re/im doubles (LE).

#include "psdo/grid.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace psdo {

struct ArrayFile {
  std::vector<std::size_t> shape;
  std::optional<GridSpec> grid;
  std::string kind;  // "signal", "symbol", "operator", "tf", "4d" or empty
  CVec data;

  nlohmann::json header() const;
};

ArrayFile make_array(const Signal& f);
ArrayFile make_array(const Symbol& a, const std::string& kind = "symbol");
ArrayFile make_array(const OperatorMatrix& T);

void write_array(const std::filesystem::path& path, const ArrayFile& a);
ArrayFile read_array(const std::filesystem::path& path);

/// Reinterpretations against a grid; throw DimMismatch on wrong length.
Signal as_signal(const ArrayFile& a, const GridSpec& grid);
Symbol as_symbol(const ArrayFile& a, const GridSpec& grid);
OperatorMatrix as_operator(const ArrayFile& a, const GridSpec& grid);

nlohmann::json grid_to_json(const GridSpec& g);
GridSpec grid_from_json(const nlohmann::json& j);

}  // namespace psdo
