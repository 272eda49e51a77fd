#include "aztec/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

namespace aztec {

namespace {

void put_u16(std::vector<uint8_t>& v, uint16_t x) {
  v.push_back(x & 0xff);
  v.push_back(x >> 8);
}
void put_u32(std::vector<uint8_t>& v, uint32_t x) {
  for (int i = 0; i < 4; ++i) v.push_back((x >> (8 * i)) & 0xff);
}
void put_f64(std::vector<uint8_t>& v, double x) {
  uint64_t bits;
  std::memcpy(&bits, &x, 8);
  for (int i = 0; i < 8; ++i) v.push_back((bits >> (8 * i)) & 0xff);
}

}  // namespace

std::vector<uint8_t> serialize_config(const AztecDiamond& g, const DimerConfig& config) {
  validate_config(g, config);
  std::vector<uint8_t> out;
  out.reserve(18 + (config.dir.size() + 3) / 4);
  out.insert(out.end(), {'A', 'Z', 'T', 'C'});
  put_u16(out, 1);
  put_u32(out, uint32_t(config.n));
  put_f64(out, g.params().a);
  uint8_t acc = 0;
  for (size_t i = 0; i < config.dir.size(); ++i) {
    acc |= uint8_t(config.dir[i] & 3) << (2 * (i & 3));
    if ((i & 3) == 3) {
      out.push_back(acc);
      acc = 0;
    }
  }
  if (config.dir.size() & 3) out.push_back(acc);
  return out;
}

DimerConfig parse_config(const std::vector<uint8_t>& bytes, double* a_out) {
  if (bytes.size() < 18 || std::memcmp(bytes.data(), "AZTC", 4) != 0)
    throw std::invalid_argument("not an AZTC record");
  uint16_t version = bytes[4] | (uint16_t(bytes[5]) << 8);
  if (version != 1) throw std::invalid_argument("unsupported AZTC version");
  uint32_t n = 0;
  for (int i = 0; i < 4; ++i) n |= uint32_t(bytes[6 + i]) << (8 * i);
  uint64_t abits = 0;
  for (int i = 0; i < 8; ++i) abits |= uint64_t(bytes[10 + i]) << (8 * i);
  double a;
  std::memcpy(&a, &abits, 8);
  if (a_out) *a_out = a;
  DimerConfig c;
  c.n = int(n);
  size_t count = size_t(n) * (n + 1);
  if (bytes.size() != 18 + (count + 3) / 4) throw std::invalid_argument("AZTC record truncated");
  c.dir.resize(count);
  for (size_t i = 0; i < count; ++i) c.dir[i] = (bytes[18 + i / 4] >> (2 * (i & 3))) & 3;
  return c;
}

void write_config_file(const std::string& path, const AztecDiamond& g, const DimerConfig& c) {
  auto bytes = serialize_config(g, c);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

DimerConfig read_config_file(const std::string& path, double* a_out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return parse_config(bytes, a_out);
}

std::array<Rgb, 8> default_palette() {
  // direction-major, parity toggles the shade
  return {{{202, 52, 51},
           {235, 140, 56},
           {59, 107, 176},
           {98, 178, 225},
           {60, 130, 62},
           {144, 201, 120},
           {120, 64, 152},
           {190, 144, 212}}};
}

std::array<Rgb, 8> grayscale_palette() {
  std::array<Rgb, 8> p;
  for (int i = 0; i < 8; ++i) {
    uint8_t v = uint8_t(32 + 28 * i);
    p[i] = {v, v, v};
  }
  return p;
}

std::array<Rgb, 8> parse_palette(const std::string& spec) {
  std::array<Rgb, 8> p;
  std::stringstream ss(spec);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',') && i < 8) {
    if (tok.size() != 6) throw std::invalid_argument("palette entries must be RRGGBB hex");
    auto hex = [&](int k) { return uint8_t(std::stoi(tok.substr(k, 2), nullptr, 16)); };
    p[i++] = {hex(0), hex(2), hex(4)};
  }
  if (i != 8) throw std::invalid_argument("palette needs exactly 8 entries");
  return p;
}

namespace {

// domino-frame square of a vertex: u right, v up
Vec2i square_of(const AztecDiamond& g, Vec2i v) {
  return {(v.x + v.y - 1) / 2, (v.y - v.x + 2 * g.n() - 1) / 2};
}

struct Domino {
  Vec2i s0, s1;  // the two unit squares
  int cls;
};

std::vector<Domino> dominoes(const AztecDiamond& g, const DimerConfig& c) {
  std::vector<Domino> out;
  out.reserve(g.num_blacks());
  for (int bi = 0; bi < g.num_blacks(); ++bi) {
    Vec2i b = g.black_at(bi);
    Vec2i w = c.white_of(g, bi);
    out.push_back({square_of(g, b), square_of(g, w), classify_dimer(g, b, w)});
  }
  return out;
}

}  // namespace

void render_ppm(std::ostream& os, const AztecDiamond& g, const DimerConfig& c,
                const std::array<Rgb, 8>& palette, int scale) {
  validate_config(g, c);
  const int side = 2 * g.n() * scale;
  std::vector<Rgb> img(size_t(side) * side, Rgb{255, 255, 255});
  for (const Domino& d : dominoes(g, c)) {
    for (Vec2i s : {d.s0, d.s1}) {
      for (int dy = 0; dy < scale; ++dy) {
        int row = side - 1 - (s.y * scale + dy);
        for (int dx = 0; dx < scale; ++dx) img[size_t(row) * side + s.x * scale + dx] = palette[d.cls];
      }
    }
  }
  os << "P6\n" << side << " " << side << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.data()), std::streamsize(img.size() * 3));
}

void render_svg(std::ostream& os, const AztecDiamond& g, const DimerConfig& c,
                const std::array<Rgb, 8>& palette, double scale) {
  validate_config(g, c);
  const int n = g.n();
  const double side = 2 * n * scale;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side
     << "\" viewBox=\"0 0 " << side << " " << side << "\">\n";
  char color[8];
  for (const Domino& d : dominoes(g, c)) {
    int x = std::min(d.s0.x, d.s1.x), y = std::max(d.s0.y, d.s1.y);
    double w = (d.s0.y == d.s1.y) ? 2 * scale : scale;
    double h = (d.s0.x == d.s1.x) ? 2 * scale : scale;
    std::snprintf(color, sizeof color, "#%02x%02x%02x", palette[d.cls].r, palette[d.cls].g,
                  palette[d.cls].b);
    os << "<rect x=\"" << x * scale << "\" y=\"" << (2 * n - 1 - y) * scale << "\" width=\"" << w
       << "\" height=\"" << h << "\" fill=\"" << color << "\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace aztec
