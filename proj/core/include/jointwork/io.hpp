// SPDX-License-Identifier: Apache-2.0
// JSON serialization for arrangements, point sets, and peeling certificates,
// plus the file and hashing helpers the command line tools are built on.
// Scalars cross the wire as decimal strings ("num/den" for non-integral
// rationals), so every round trip is exact.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jointwork/decimal.hpp"
#include "jointwork/geometry.hpp"
#include "jointwork/peeling.hpp"
#include "jointwork/poly.hpp"

namespace jw {

// Malformed JSON or a schema violation. line/column are 1-based and 0 when
// the failure happened past the parsing stage.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line = 0, int column = 0)
      : std::runtime_error(msg), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_ = 0;
  int column_ = 0;
};

std::string sha256_hex(const std::string& bytes);

std::string read_file(const std::string& path);  // throws std::runtime_error on IO failure
void write_file(const std::string& path, const std::string& bytes);

// Arrangement JSON:
//   {"field":{"type":"fp","p":101},"n":3,
//    "lines":[{"base":["0","0","0"],"dir":["1","0","0"],"weight":1},...]}
// Loading canonicalizes every line and validates the arrangement.
std::string arrangement_to_json(const Arrangement& arr);
Arrangement arrangement_from_json(const std::string& text);

// Several collections over one field share a file:
//   {"collections":[<arrangement>,...]}
std::string collections_to_json(const std::vector<Arrangement>& arrs);
std::vector<Arrangement> collections_from_json(const std::string& text);

struct PointSet {
  FieldDescriptor field = FieldDescriptor::rat();
  unsigned n = 0;
  std::vector<Point> points;
};

// Point-set JSON: {"field":{...},"n":2,"points":[["1/2","3"],...]}
std::string points_to_json(const PointSet& ps);
PointSet points_from_json(const std::string& text);

// Peeling certificate JSON; self-describing (embeds field and dimension).
std::string certificate_to_json(const FieldDescriptor& field, unsigned n,
                                const PeelingCertificate& cert);
std::pair<PeelingCertificate, std::pair<FieldDescriptor, unsigned>> certificate_from_json(
    const std::string& text);

// Exact inverse of Dec::str().
Dec dec_from_string(const std::string& text);

// Accepts the library term grammar plus infix minus ("z - x*y"), which is
// rewritten to coefficient form before the core parser runs.
MultiPoly parse_poly_text(const FieldDescriptor& field, unsigned n, const std::string& text);

}  // namespace jw
