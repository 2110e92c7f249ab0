#pragma once

#include <string>
#include <vector>

#include "frax/carleson.hpp"
#include "frax/functionals.hpp"
#include "frax/grid.hpp"

namespace frax {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// Grid functions. CSV: a header line "n,L,N", one line with those values,
// then one value per line. JSON: {"n","L","N","encoding","data"} where data
// is base64 of the little-endian float64 array. Both round-trip bit-exactly;
// the t-grid fields of the spec keep their defaults.
std::string grid_to_csv(const GridFunction& f);
GridFunction grid_from_csv(const std::string& text);
std::string grid_to_json(const GridFunction& f);
GridFunction grid_from_json(const std::string& text);

std::string base64_encode(const std::vector<unsigned char>& bytes);
std::vector<unsigned char> base64_decode(const std::string& text);

/// Rows "x1,...,xn,t,w"; blank lines and lines starting with '#' are skipped.
/// Throws ParseError on malformed rows or nonpositive t, w.
DiscreteMeasure measure_from_csv(const std::string& text, int n);
std::string measure_to_csv(const DiscreteMeasure& mu);

/// JSON array of {"kind": "ball", "center": [...], "radius": r},
/// {"kind": "ball-union", "balls": [...]} or {"kind": "box", "lo": [...], "hi": [...]}.
std::vector<OpenSet> open_sets_from_json(const std::string& text, int n);

}  // namespace frax
