#ifndef AZTEC_IO_HPP
#define AZTEC_IO_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "aztec/lattice.hpp"

namespace aztec {

// Compact binary record:
//   magic "AZTC" | u16 version (=1) | u32 n | f64 a    (little endian)
// followed by one 2-bit direction code per black vertex in index
// (row-major (x2,x1)) order, packed 4 per byte from the low bits up.
std::vector<uint8_t> serialize_config(const AztecDiamond& g, const DimerConfig& config);
DimerConfig parse_config(const std::vector<uint8_t>& bytes, double* a_out = nullptr);

void write_config_file(const std::string& path, const AztecDiamond& g, const DimerConfig& c);
DimerConfig read_config_file(const std::string& path, double* a_out = nullptr);

struct Rgb {
  uint8_t r = 0, g = 0, b = 0;
};

// One colour per dimer class (direction x parity of the black vertex).
// The assignment of colours to classes is a free choice; this is only a
// default and callers may pass their own table.
std::array<Rgb, 8> default_palette();
std::array<Rgb, 8> grayscale_palette();
std::array<Rgb, 8> parse_palette(const std::string& spec);  // "RRGGBB,..." x8

// Raster render in the domino frame (45-degree rotation of the vertex
// frame); scale = pixels per unit square.
void render_ppm(std::ostream& os, const AztecDiamond& g, const DimerConfig& c,
                const std::array<Rgb, 8>& palette, int scale = 2);
void render_svg(std::ostream& os, const AztecDiamond& g, const DimerConfig& c,
                const std::array<Rgb, 8>& palette, double scale = 4.0);

}  // namespace aztec

#endif
