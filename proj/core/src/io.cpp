// SPDX-License-Identifier: Apache-2.0

#include "jointwork/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"

#include "jointwork/errors.hpp"

namespace jw {
namespace {

using ordered_json = nlohmann::ordered_json;

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string msg = e.what();
    const std::size_t mark = msg.find("column ");
    const std::size_t colon = mark == std::string::npos ? mark : msg.find(": ", mark);
    if (colon != std::string::npos) msg = msg.substr(colon + 2);
    throw ParseError(msg, line, col);
  }
}

const ordered_json& need(const ordered_json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key))
    throw ParseError(std::string("missing key \"") + key + "\"");
  return obj.at(key);
}

std::string need_string(const ordered_json& obj, const char* key) {
  const ordered_json& v = need(obj, key);
  if (!v.is_string()) throw ParseError(std::string("key \"") + key + "\" must be a string");
  return v.get<std::string>();
}

std::uint64_t need_uint(const ordered_json& obj, const char* key) {
  const ordered_json& v = need(obj, key);
  if (!v.is_number_unsigned())
    throw ParseError(std::string("key \"") + key + "\" must be a non-negative integer");
  return v.get<std::uint64_t>();
}

ordered_json field_to_json(const FieldDescriptor& f) {
  ordered_json out;
  if (f.is_rational()) {
    out["type"] = "rat";
  } else {
    out["type"] = "fp";
    out["p"] = f.p();
  }
  return out;
}

FieldDescriptor field_from_json(const ordered_json& v) {
  const std::string type = need_string(v, "type");
  if (type == "rat") return FieldDescriptor::rat();
  if (type == "fp") return FieldDescriptor::fp(need_uint(v, "p"));
  throw ParseError("field type must be \"fp\" or \"rat\", got \"" + type + "\"");
}

ordered_json coords_to_json(const std::vector<Scalar>& c) {
  ordered_json out = ordered_json::array();
  for (const Scalar& s : c) out.push_back(s.str());
  return out;
}

std::vector<Scalar> coords_from_json(const ordered_json& v, const FieldDescriptor& f,
                                     unsigned n, const char* what) {
  if (!v.is_array() || v.size() != n)
    throw ParseError(std::string(what) + " must be an array of " + std::to_string(n) +
                     " scalar strings");
  std::vector<Scalar> out;
  out.reserve(n);
  for (const auto& e : v) {
    if (!e.is_string()) throw ParseError(std::string(what) + " entries must be strings");
    try {
      out.push_back(Scalar::parse(f, e.get<std::string>()));
    } catch (const std::exception& ex) {
      throw ParseError(std::string("bad scalar in ") + what + ": " + ex.what());
    }
  }
  return out;
}

ordered_json arrangement_to_tree(const Arrangement& arr) {
  ordered_json out;
  out["field"] = field_to_json(arr.field);
  out["n"] = arr.n;
  ordered_json lines = ordered_json::array();
  for (std::size_t i = 0; i < arr.lines.size(); ++i) {
    ordered_json l;
    l["base"] = coords_to_json(arr.lines[i].base.c);
    l["dir"] = coords_to_json(arr.lines[i].dir.c);
    l["weight"] = arr.weight(i);
    lines.push_back(std::move(l));
  }
  out["lines"] = std::move(lines);
  return out;
}

Arrangement arrangement_from_tree(const ordered_json& tree) {
  Arrangement arr;
  arr.field = field_from_json(need(tree, "field"));
  const std::uint64_t n = need_uint(tree, "n");
  if (n < 1 || n > 64) throw ParseError("dimension n out of range");
  arr.n = static_cast<unsigned>(n);
  const ordered_json& lines = need(tree, "lines");
  if (!lines.is_array()) throw ParseError("key \"lines\" must be an array");
  bool weighted = false;
  for (const auto& l : lines) {
    const std::vector<Scalar> base = coords_from_json(need(l, "base"), arr.field, arr.n, "base");
    const std::vector<Scalar> dir = coords_from_json(need(l, "dir"), arr.field, arr.n, "dir");
    std::uint64_t w = 1;
    if (l.is_object() && l.contains("weight")) w = need_uint(l, "weight");
    if (w < 1) throw ParseError("line weight must be at least 1");
    try {
      arr.lines.push_back(canonicalize_line(Point(base), dir));
    } catch (const std::exception& ex) {
      throw ParseError(std::string("bad line: ") + ex.what());
    }
    arr.weights.push_back(w);
    if (w != 1) weighted = true;
  }
  if (!weighted) arr.weights.clear();
  try {
    arr.validate();
  } catch (const std::exception& ex) {
    throw ParseError(std::string("invalid arrangement: ") + ex.what());
  }
  return arr;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256: digest failure");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read " + path);
  return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("cannot write " + path);
}

std::string arrangement_to_json(const Arrangement& arr) {
  return arrangement_to_tree(arr).dump(2) + "\n";
}

Arrangement arrangement_from_json(const std::string& text) {
  return arrangement_from_tree(parse_json(text));
}

std::string collections_to_json(const std::vector<Arrangement>& arrs) {
  ordered_json out;
  out["schema"] = "jointwork-collections/1";
  ordered_json list = ordered_json::array();
  for (const Arrangement& a : arrs) list.push_back(arrangement_to_tree(a));
  out["collections"] = std::move(list);
  return out.dump(2) + "\n";
}

std::vector<Arrangement> collections_from_json(const std::string& text) {
  const ordered_json tree = parse_json(text);
  const ordered_json& list = need(tree, "collections");
  if (!list.is_array() || list.empty())
    throw ParseError("key \"collections\" must be a non-empty array");
  std::vector<Arrangement> out;
  out.reserve(list.size());
  for (const auto& a : list) out.push_back(arrangement_from_tree(a));
  return out;
}

std::string points_to_json(const PointSet& ps) {
  ordered_json out;
  out["field"] = field_to_json(ps.field);
  out["n"] = ps.n;
  ordered_json pts = ordered_json::array();
  for (const Point& p : ps.points) pts.push_back(coords_to_json(p.c));
  out["points"] = std::move(pts);
  return out.dump(2) + "\n";
}

PointSet points_from_json(const std::string& text) {
  const ordered_json tree = parse_json(text);
  PointSet ps;
  ps.field = field_from_json(need(tree, "field"));
  const std::uint64_t n = need_uint(tree, "n");
  if (n < 1 || n > 64) throw ParseError("dimension n out of range");
  ps.n = static_cast<unsigned>(n);
  const ordered_json& pts = need(tree, "points");
  if (!pts.is_array()) throw ParseError("key \"points\" must be an array");
  ps.points.reserve(pts.size());
  for (const auto& p : pts)
    ps.points.push_back(Point(coords_from_json(p, ps.field, ps.n, "point")));
  return ps;
}

std::string certificate_to_json(const FieldDescriptor& field, unsigned n,
                                const PeelingCertificate& cert) {
  ordered_json out;
  out["schema"] = "jointwork-certificate/1";
  out["field"] = field_to_json(field);
  out["n"] = n;
  ordered_json steps = ordered_json::array();
  for (const PeelStep& s : cert.steps) {
    ordered_json step;
    step["line_id"] = s.line_id;
    step["degree_d"] = s.degree_d;
    ordered_json removed = ordered_json::array();
    for (const Point& p : s.removed_points) removed.push_back(coords_to_json(p.c));
    step["removed_points"] = std::move(removed);
    steps.push_back(std::move(step));
  }
  out["steps"] = std::move(steps);
  out["total_removed"] = cert.total_removed;
  out["observed_constant"] = cert.observed_constant.str();
  ordered_json buckets = ordered_json::array();
  for (const auto& [floor, count] : cert.bucket_counts)
    buckets.push_back(ordered_json::array({floor.get_str(), count}));
  out["bucket_counts"] = std::move(buckets);
  return out.dump(2) + "\n";
}

std::pair<PeelingCertificate, std::pair<FieldDescriptor, unsigned>> certificate_from_json(
    const std::string& text) {
  const ordered_json tree = parse_json(text);
  const FieldDescriptor field = field_from_json(need(tree, "field"));
  const std::uint64_t n = need_uint(tree, "n");
  if (n < 1 || n > 64) throw ParseError("dimension n out of range");
  PeelingCertificate cert;
  const ordered_json& steps = need(tree, "steps");
  if (!steps.is_array()) throw ParseError("key \"steps\" must be an array");
  for (const auto& s : steps) {
    PeelStep step;
    step.line_id = need_uint(s, "line_id");
    step.degree_d = static_cast<unsigned>(need_uint(s, "degree_d"));
    const ordered_json& removed = need(s, "removed_points");
    if (!removed.is_array()) throw ParseError("key \"removed_points\" must be an array");
    for (const auto& p : removed)
      step.removed_points.push_back(
          Point(coords_from_json(p, field, static_cast<unsigned>(n), "point")));
    cert.steps.push_back(std::move(step));
  }
  cert.total_removed = need_uint(tree, "total_removed");
  cert.observed_constant = dec_from_string(need_string(tree, "observed_constant"));
  const ordered_json& buckets = need(tree, "bucket_counts");
  if (!buckets.is_array()) throw ParseError("key \"bucket_counts\" must be an array");
  for (const auto& b : buckets) {
    if (!b.is_array() || b.size() != 2 || !b[0].is_string() || !b[1].is_number_unsigned())
      throw ParseError("bucket_counts entries must be [\"floor\", count] pairs");
    mpz_class floor;
    if (floor.set_str(b[0].get<std::string>(), 10) != 0)
      throw ParseError("bad bucket floor \"" + b[0].get<std::string>() + "\"");
    cert.bucket_counts.emplace_back(std::move(floor), b[1].get<std::size_t>());
  }
  return {std::move(cert), {field, static_cast<unsigned>(n)}};
}

Dec dec_from_string(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
  std::string digits;
  int scale = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.') {
      if (seen_dot) throw ParseError("bad decimal \"" + text + "\"");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++scale;
    } else {
      throw ParseError("bad decimal \"" + text + "\"");
    }
  }
  if (!seen_digit) throw ParseError("bad decimal \"" + text + "\"");
  Dec out;
  out.units = mpz_class(digits, 10);
  if (neg) out.units = -out.units;
  out.scale = scale;
  return out;
}

MultiPoly parse_poly_text(const FieldDescriptor& field, unsigned n, const std::string& text) {
  // Binary minus becomes "+ -"; the first minus of the string stays unary.
  std::string flat;
  flat.reserve(text.size() + 8);
  char prev = 0;
  for (const char c : text) {
    if (c == '-' && prev != 0 && prev != '+' && prev != '*' && prev != '^') flat.push_back('+');
    flat.push_back(c);
    if (!std::isspace(static_cast<unsigned char>(c))) prev = c;
  }
  // A minus directly in front of a variable needs an explicit coefficient.
  std::string out;
  out.reserve(flat.size() + 8);
  for (std::size_t i = 0; i < flat.size(); ++i) {
    out.push_back(flat[i]);
    if (flat[i] != '-') continue;
    std::size_t j = i + 1;
    while (j < flat.size() && std::isspace(static_cast<unsigned char>(flat[j]))) ++j;
    if (j < flat.size() && std::isalpha(static_cast<unsigned char>(flat[j]))) out += "1*";
  }
  try {
    return MultiPoly::parse(field, n, out);
  } catch (const std::exception& ex) {
    throw ParseError(std::string("bad polynomial \"") + text + "\": " + ex.what());
  }
}

}  // namespace jw
