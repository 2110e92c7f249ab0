#include "frax/io.hpp"

#include <openssl/evp.h>

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "frax/errors.hpp"
#include "frax/report.hpp"

namespace frax {

namespace {

using json = nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      if (pos < text.size()) lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = line.find(',', pos);
    if (end == std::string_view::npos) {
      out.push_back(trim(line.substr(pos)));
      break;
    }
    out.push_back(trim(line.substr(pos, end - pos)));
    pos = end + 1;
  }
  return out;
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("line " + std::to_string(line) + ": not a number: '" + std::string(s) + "'");
  }
  return v;
}

int parse_int(std::string_view s, std::size_t line) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("line " + std::to_string(line) + ": not an integer: '" + std::string(s) + "'");
  }
  return v;
}

GridSpec make_spec(int n, double L, int N) {
  GridSpec spec;
  spec.n = n;
  spec.half_width = L;
  spec.points = N;
  try {
    spec.validate();
  } catch (const Error& e) {
    throw ParseError(std::string("invalid grid header: ") + e.what());
  }
  return spec;
}

Point read_point(const json& j, int n, const char* what) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(n)) {
    throw ParseError(std::string(what) + " must be an array of " + std::to_string(n) + " numbers");
  }
  Point p{0.0, 0.0, 0.0};
  for (int d = 0; d < n; ++d) {
    const auto& v = j[static_cast<std::size_t>(d)];
    if (!v.is_number()) throw ParseError(std::string(what) + " must contain numbers");
    p[static_cast<std::size_t>(d)] = v.get<double>();
  }
  return p;
}

Ball read_ball(const json& j, int n) {
  if (!j.is_object() || !j.contains("center") || !j.contains("radius")) {
    throw ParseError("ball needs 'center' and 'radius'");
  }
  if (!j["radius"].is_number()) throw ParseError("ball radius must be a number");
  return Ball{read_point(j["center"], n, "center"), j["radius"].get<double>()};
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error("write failed for '" + path + "'");
}

std::string grid_to_csv(const GridFunction& f) {
  f.check();
  std::string out = "n,L,N\n";
  out += std::to_string(f.spec.n) + "," + format_double(f.spec.half_width) + "," + std::to_string(f.spec.points) + "\n";
  for (double v : f.values) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

GridFunction grid_from_csv(const std::string& text) {
  std::vector<std::string_view> lines;
  for (auto l : split_lines(text)) {
    if (!trim(l).empty()) lines.push_back(l);
  }
  if (lines.size() < 2) throw ParseError("grid CSV needs a header and a dimension line");
  const auto header = split_fields(lines[0]);
  if (header.size() != 3 || header[0] != "n" || header[1] != "L" || header[2] != "N") {
    throw ParseError("grid CSV header must be 'n,L,N'");
  }
  const auto dims = split_fields(lines[1]);
  if (dims.size() != 3) throw ParseError("line 2: expected n,L,N values");
  GridFunction f(make_spec(parse_int(dims[0], 2), parse_double(dims[1], 2), parse_int(dims[2], 2)));
  if (lines.size() - 2 != f.values.size()) {
    throw ParseError("grid CSV has " + std::to_string(lines.size() - 2) + " values, expected " +
                     std::to_string(f.values.size()));
  }
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = parse_double(trim(lines[i + 2]), i + 3);
  f.check();
  return f;
}

std::string base64_encode(const std::vector<unsigned char>& bytes) {
  if (bytes.empty()) return {};
  std::string out(4 * ((bytes.size() + 2) / 3) + 1, '\0');
  const int len = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(), static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(len));
  return out;
}

std::vector<unsigned char> base64_decode(const std::string& text) {
  if (text.empty()) return {};
  if (text.size() % 4 != 0) throw ParseError("base64 length must be a multiple of 4");
  std::vector<unsigned char> out(3 * text.size() / 4);
  const int len = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()), static_cast<int>(text.size()));
  if (len < 0) throw ParseError("invalid base64 payload");
  // EVP_DecodeBlock keeps the bytes produced by '=' padding.
  std::size_t pad = 0;
  if (text.back() == '=') ++pad;
  if (text.size() >= 2 && text[text.size() - 2] == '=') ++pad;
  out.resize(static_cast<std::size_t>(len) - pad);
  return out;
}

std::string grid_to_json(const GridFunction& f) {
  f.check();
  std::vector<unsigned char> bytes(f.values.size() * 8);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    auto bits = std::bit_cast<std::uint64_t>(f.values[i]);
    for (int b = 0; b < 8; ++b) {
      bytes[8 * i + static_cast<std::size_t>(b)] = static_cast<unsigned char>(bits & 0xffU);
      bits >>= 8;
    }
  }
  JsonWriter w;
  w.begin_object();
  w.key("n").value(f.spec.n);
  w.key("L").value(f.spec.half_width);
  w.key("N").value(f.spec.points);
  w.key("encoding").value("base64-f64le");
  w.key("data").value(base64_encode(bytes));
  w.end_object();
  return w.str() + "\n";
}

GridFunction grid_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("grid JSON: ") + e.what());
  }
  for (const char* k : {"n", "L", "N", "data"}) {
    if (!j.contains(k)) throw ParseError(std::string("grid JSON missing '") + k + "'");
  }
  if (j.contains("encoding") && j["encoding"] != "base64-f64le") throw ParseError("unsupported grid encoding");
  if (!j["n"].is_number_integer() || !j["N"].is_number_integer() || !j["L"].is_number() || !j["data"].is_string()) {
    throw ParseError("grid JSON fields have the wrong type");
  }
  GridFunction f(make_spec(j["n"].get<int>(), j["L"].get<double>(), j["N"].get<int>()));
  const auto bytes = base64_decode(j["data"].get<std::string>());
  if (bytes.size() != 8 * f.values.size()) throw ParseError("grid JSON payload has the wrong length");
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b) bits = (bits << 8) | bytes[8 * i + static_cast<std::size_t>(b)];
    f.values[i] = std::bit_cast<double>(bits);
  }
  f.check();
  return f;
}

DiscreteMeasure measure_from_csv(const std::string& text, int n) {
  require_dimension(n);
  DiscreteMeasure mu;
  mu.n = n;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line);
    if (fields.size() != static_cast<std::size_t>(n + 2)) {
      throw ParseError("line " + std::to_string(i + 1) + ": expected " + std::to_string(n + 2) + " fields, got " +
                       std::to_string(fields.size()));
    }
    Atom a;
    for (int d = 0; d < n; ++d) a.x[static_cast<std::size_t>(d)] = parse_double(fields[static_cast<std::size_t>(d)], i + 1);
    a.t = parse_double(fields[static_cast<std::size_t>(n)], i + 1);
    a.w = parse_double(fields[static_cast<std::size_t>(n + 1)], i + 1);
    for (int d = 0; d < n; ++d) {
      if (!std::isfinite(a.x[static_cast<std::size_t>(d)])) throw ParseError("line " + std::to_string(i + 1) + ": non-finite coordinate");
    }
    if (!(a.t > 0.0) || !std::isfinite(a.t)) throw ParseError("line " + std::to_string(i + 1) + ": t must be positive");
    if (!(a.w > 0.0) || !std::isfinite(a.w)) throw ParseError("line " + std::to_string(i + 1) + ": w must be positive");
    mu.atoms.push_back(a);
  }
  return mu;
}

std::string measure_to_csv(const DiscreteMeasure& mu) {
  std::string out;
  for (const auto& a : mu.atoms) {
    for (int d = 0; d < mu.n; ++d) out += format_double(a.x[static_cast<std::size_t>(d)]) + ",";
    out += format_double(a.t) + "," + format_double(a.w) + "\n";
  }
  return out;
}

std::vector<OpenSet> open_sets_from_json(const std::string& text, int n) {
  require_dimension(n);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("open-set JSON: ") + e.what());
  }
  if (j.is_object()) j = json::array({j});
  if (!j.is_array()) throw ParseError("open-set JSON must be an array of sets");
  std::vector<OpenSet> family;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("kind") || !item["kind"].is_string()) {
      throw ParseError("each open set needs a string 'kind'");
    }
    const auto kind = item["kind"].get<std::string>();
    OpenSet o;
    if (kind == "ball") {
      o = OpenSet::single(read_ball(item, n));
    } else if (kind == "ball-union") {
      if (!item.contains("balls") || !item["balls"].is_array()) throw ParseError("ball-union needs 'balls'");
      std::vector<Ball> balls;
      for (const auto& b : item["balls"]) balls.push_back(read_ball(b, n));
      o = OpenSet::ball_union(std::move(balls));
    } else if (kind == "box") {
      if (!item.contains("lo") || !item.contains("hi")) throw ParseError("box needs 'lo' and 'hi'");
      o = OpenSet::make_box(Box{read_point(item["lo"], n, "lo"), read_point(item["hi"], n, "hi")});
    } else {
      throw ParseError("unknown open-set kind '" + kind + "'");
    }
    try {
      o.validate(n);
    } catch (const ParameterError& e) {
      throw ParseError(std::string("invalid open set: ") + e.what());
    }
    family.push_back(std::move(o));
  }
  return family;
}

}  // namespace frax
