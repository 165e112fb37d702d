#pragma once

// Text and JSON formats.
//
// Set text format: one point per line as whitespace- or comma-separated
// integers; '#' starts a comment; blank lines are ignored. The dimension is
// taken from the first point unless given, and every later point must match.
// Function text format: the same, with a trailing value "p/q" or "p".

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sumstab/infconv.hpp"
#include "sumstab/lattice.hpp"
#include "sumstab/polytope.hpp"
#include "sumstab/rational.hpp"

namespace sumstab::io {

using json = nlohmann::ordered_json;

/// Malformed input; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string> tokens(std::string line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  for (auto& ch : line)
    if (ch == ',') ch = ' ';
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

inline Coord parse_coord(const std::string& t, std::size_t line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    throw ParseError("malformed integer '" + t + "'", line);
  }
  if (used != t.size()) throw ParseError("malformed integer '" + t + "'", line);
  try {
    check_coord(v);
  } catch (const std::exception& e) {
    throw ParseError(e.what(), line);
  }
  return v;
}

}  // namespace detail

inline LatticeSet read_set(std::istream& in, std::optional<std::size_t> dim = std::nullopt) {
  std::vector<Coord> flat;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const auto toks = detail::tokens(line);
    if (toks.empty()) continue;
    if (!dim) dim = toks.size();
    if (toks.size() != *dim)
      throw ParseError("expected " + std::to_string(*dim) + " coordinates, got " + std::to_string(toks.size()), lineno);
    for (const auto& t : toks) flat.push_back(detail::parse_coord(t, lineno));
  }
  if (dim && *dim == 0) throw ParseError("dimension must be positive");
  return LatticeSet::from_flat(dim.value_or(1), std::move(flat));
}

inline void write_set(std::ostream& out, const LatticeSet& a, const std::string& comment = {}) {
  if (!comment.empty()) out << "# " << comment << '\n';
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto r = a.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) out << (j ? " " : "") << r[j];
    out << '\n';
  }
}

inline LatticeFunction read_function(std::istream& in, std::optional<std::size_t> dim = std::nullopt) {
  std::vector<std::pair<Point, Rational>> pairs;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const auto toks = detail::tokens(line);
    if (toks.empty()) continue;
    if (toks.size() < 2) throw ParseError("expected coordinates followed by a value", lineno);
    if (!dim) dim = toks.size() - 1;
    if (toks.size() != *dim + 1)
      throw ParseError("expected " + std::to_string(*dim) + " coordinates and a value", lineno);
    std::vector<Coord> p;
    for (std::size_t j = 0; j < *dim; ++j) p.push_back(detail::parse_coord(toks[j], lineno));
    Rational v;
    try {
      v = parse_rational(toks.back());
    } catch (const std::exception&) {
      throw ParseError("malformed value '" + toks.back() + "'", lineno);
    }
    pairs.emplace_back(Point(std::move(p)), std::move(v));
  }
  try {
    return LatticeFunction::from_pairs(dim.value_or(1), pairs);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline void write_function(std::ostream& out, const LatticeFunction& f, const std::string& comment = {}) {
  if (!comment.empty()) out << "# " << comment << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (auto c : f.domain().row(i)) out << c << ' ';
    out << to_string(f.values()[i]) << '\n';
  }
}

// JSON: {"dim": k, "points": [[...], ...]} and, for functions, a parallel
// "values" array of "p/q" strings.

inline json set_to_json(const LatticeSet& a) {
  json pts = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) pts.push_back(std::vector<Coord>(a.row(i).begin(), a.row(i).end()));
  return json{{"dim", a.dim()}, {"points", pts}};
}

inline LatticeSet set_from_json(const json& j) {
  try {
    const auto dim = j.at("dim").get<std::size_t>();
    if (dim == 0) throw ParseError("dimension must be positive");
    std::vector<Coord> flat;
    for (const auto& p : j.at("points")) {
      if (!p.is_array() || p.size() != dim) throw ParseError("point dimension mismatch");
      for (const auto& c : p) {
        const auto v = c.get<Coord>();
        check_coord(v);
        flat.push_back(v);
      }
    }
    return LatticeSet::from_flat(dim, std::move(flat));
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

inline json function_to_json(const LatticeFunction& f) {
  json j = set_to_json(f.domain());
  json vals = json::array();
  for (const auto& v : f.values()) vals.push_back(to_string(v));
  j["values"] = vals;
  return j;
}

namespace detail {

// A rational as "p/q", an integer, or a [num, den] pair.
inline Rational rational_from_json(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(to_integer(v.get<std::int64_t>()));
  if (v.is_array() && v.size() == 2) {
    auto part = [](const json& x) {
      return x.is_string() ? Integer(x.get<std::string>()) : to_integer(x.get<std::int64_t>());
    };
    const Integer den = part(v[1]);
    if (sgn(den) == 0) throw ParseError("zero denominator");
    Rational q(part(v[0]), den);
    q.canonicalize();
    return q;
  }
  throw ParseError("expected a rational as \"p/q\", an integer, or [num, den]");
}

}  // namespace detail

inline LatticeFunction function_from_json(const json& j) {
  const LatticeSet dom = set_from_json(j);
  try {
    const auto& vals = j.at("values");
    if (vals.size() != j.at("points").size()) throw ParseError("one value per point required");
    std::vector<std::pair<Point, Rational>> pairs;
    for (std::size_t i = 0; i < vals.size(); ++i)
      pairs.emplace_back(Point(j["points"][i].get<std::vector<Coord>>()), detail::rational_from_json(vals[i]));
    return LatticeFunction::from_pairs(dom.dim(), pairs);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

/// {"dim": k, "vertices": [[[num, den], ...], ...], "halfspaces": [...]}.
inline json polytope_to_json(const Polytope& p) {
  json verts = json::array();
  for (const auto& v : p.vertices()) {
    json pt = json::array();
    for (const auto& x : v) pt.push_back(json::array({to_int64(x.get_num()), to_int64(x.get_den())}));
    verts.push_back(pt);
  }
  json hs = json::array();
  for (const auto& h : p.halfspaces()) {
    json n = json::array();
    for (const auto& x : h.normal) n.push_back(x.get_str());
    hs.push_back(json{{"normal", n}, {"offset", to_string(h.offset)}, {"open", h.open}});
  }
  return json{{"dim", p.dim()}, {"vertices", verts}, {"halfspaces", hs}, {"volume", to_string(p.volume())}};
}

/// Reads {"dim": k, "vertices": [...]}, each coordinate in any form accepted
/// by rational_from_json. Only the vertex list is used; the hull is rebuilt.
inline Polytope polytope_from_json(const json& j) {
  try {
    const auto dim = j.at("dim").get<std::size_t>();
    if (dim == 0) throw ParseError("dimension must be positive");
    std::vector<RationalPoint> pts;
    for (const auto& v : j.at("vertices")) {
      if (!v.is_array() || v.size() != dim) throw ParseError("vertex dimension mismatch");
      RationalPoint p;
      for (const auto& c : v) p.push_back(detail::rational_from_json(c));
      pts.push_back(std::move(p));
    }
    if (pts.empty()) throw ParseError("a region needs at least one vertex; unbounded regions are not representable");
    return Polytope::hull_of(dim, std::move(pts));
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace sumstab::io
