#include "rbsect/instance.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rbsect {
namespace {

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t j = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > j) out.push_back(s.substr(j, i - j));
  }
  return out;
}

double number(std::string_view tok, const std::string& source, int line) {
  double v = 0;
  const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || end != tok.data() + tok.size() || !std::isfinite(v))
    throw ParseError(source, line, "bad number '" + std::string(tok) + "'");
  return v;
}

}  // namespace

ParseError::ParseError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

InstanceFile parse_instance(std::istream& in, const std::string& source) {
  InstanceFile f;
  f.source = source;
  std::vector<Record>* section = &f.a;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::string_view s = text;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    const auto tok = tokens(s);
    if (tok.empty()) continue;
    if (tok[0] == "[A]" || tok[0] == "[B]") {
      if (tok.size() != 1) throw ParseError(source, line, "unexpected text after section header");
      section = tok[0] == "[A]" ? &f.a : &f.b;
      continue;
    }
    Record r;
    r.line = line;
    if (tok[0] == "L") {
      if (tok.size() != 5) throw ParseError(source, line, "L expects 4 numbers");
      r.kind = CurveKind::line;
      r.seg = {{number(tok[1], source, line), number(tok[2], source, line)},
               {number(tok[3], source, line), number(tok[4], source, line)}};
      if (r.seg.a == r.seg.b) throw ParseError(source, line, "segment endpoints coincide");
    } else if (tok[0] == "PAR") {
      if (tok.size() != 9) throw ParseError(source, line, "PAR expects 8 numbers");
      double v[8];
      for (int i = 0; i < 8; ++i) v[i] = number(tok[i + 1], source, line);
      r.kind = CurveKind::parabola;
      r.arc = ParabolaArc{{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, v[6], v[7]};
    } else {
      throw ParseError(source, line, "unknown record '" + std::string(tok[0]) + "'");
    }
    section->push_back(r);
  }
  return f;
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_instance(in, path);
}

std::vector<Curve> to_curves(const std::vector<Record>& recs, const std::string& source) {
  std::vector<Curve> out;
  out.reserve(recs.size());
  for (const Record& r : recs) {
    try {
      const auto id = static_cast<CurveId>(out.size());
      out.push_back(r.kind == CurveKind::line ? Curve::line(r.seg.a, r.seg.b, id)
                                              : Curve::parabola(r.arc, id));
    } catch (const ValidationError& e) {
      throw ParseError(source, r.line, e.what());
    }
  }
  return out;
}

Instance to_instance(const InstanceFile& f) {
  return {to_curves(f.a, f.source), to_curves(f.b, f.source)};
}

std::vector<Segment> to_segments(const std::vector<Record>& recs, const std::string& source) {
  std::vector<Segment> out;
  out.reserve(recs.size());
  for (const Record& r : recs) {
    if (r.kind != CurveKind::line) throw ParseError(source, r.line, "expected a line segment");
    out.push_back(r.seg);
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? end : buf);
}

void print_curve(std::ostream& out, const Curve& c) {
  auto f = format_double;
  if (c.is_line()) {
    out << "L " << f(c.left().x) << ' ' << f(c.left().y) << ' ' << f(c.right().x) << ' '
        << f(c.right().y) << '\n';
    return;
  }
  const ParabolaArc& a = c.parabola();
  out << "PAR " << f(a.focus.x) << ' ' << f(a.focus.y) << ' ' << f(a.directrix_point.x) << ' '
      << f(a.directrix_point.y) << ' ' << f(a.direction.x) << ' ' << f(a.direction.y) << ' '
      << f(a.t_lo) << ' ' << f(a.t_hi) << '\n';
}

void print_instance(std::ostream& out, const Instance& inst) {
  out << "[A]\n";
  for (const Curve& c : inst.red) print_curve(out, c);
  out << "[B]\n";
  for (const Curve& c : inst.blue) print_curve(out, c);
}

void print_segments(std::ostream& out, const std::vector<Segment>& a, const std::vector<Segment>& b) {
  auto f = format_double;
  auto put = [&](const std::vector<Segment>& s) {
    for (const Segment& g : s)
      out << "L " << f(g.a.x) << ' ' << f(g.a.y) << ' ' << f(g.b.x) << ' ' << f(g.b.y) << '\n';
  };
  out << "[A]\n";
  put(a);
  out << "[B]\n";
  put(b);
}

}  // namespace rbsect
