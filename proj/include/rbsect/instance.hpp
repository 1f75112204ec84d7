#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbsect/geometry.hpp"

namespace rbsect {

/// Two curve sets; A is red, B is blue.
struct Instance {
  std::vector<Curve> red;
  std::vector<Curve> blue;
};

/// One parsed record, before any geometric validation.
struct Record {
  CurveKind kind = CurveKind::line;
  Segment seg;
  ParabolaArc arc;
  int line = 0;
};

struct InstanceFile {
  std::string source;
  std::vector<Record> a, b;
};

/// Parse or validation failure tied to a 1-based input line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Reads `L x1 y1 x2 y2` and `PAR fx fy dx dy ux uy t0 t1` records. Blank
/// lines and `#` comments are ignored. Records before any section header
/// go to A; `[A]` and `[B]` switch sections.
InstanceFile parse_instance(std::istream& in, const std::string& source = "<input>");
InstanceFile read_instance_file(const std::string& path);

/// Builds validated curves; errors carry the offending line.
std::vector<Curve> to_curves(const std::vector<Record>& recs, const std::string& source);
Instance to_instance(const InstanceFile& f);

/// Line segments of a record list; parabola records are rejected.
std::vector<Segment> to_segments(const std::vector<Record>& recs, const std::string& source);

/// Writes both sections with round-trip exact numbers.
void print_instance(std::ostream& out, const Instance& inst);
void print_curve(std::ostream& out, const Curve& c);
void print_segments(std::ostream& out, const std::vector<Segment>& a, const std::vector<Segment>& b);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace rbsect
