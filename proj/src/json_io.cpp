#include "unitay/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "unitay/error.hpp"

namespace unitay {

namespace {

double finite_number(const Json& v, const std::string& what) {
  require(v.is_number(), ErrorCode::InvalidInput, what + " must be a number");
  const double x = v.get<double>();
  require(std::isfinite(x), ErrorCode::InvalidInput, what + " must be finite");
  return x;
}

Point point_from(const Json& v, const std::string& what) {
  require(v.is_array() && v.size() == 2, ErrorCode::InvalidInput, what + " must be an [x, y] pair");
  return {finite_number(v[0], what), finite_number(v[1], what)};
}

void write(std::ostringstream& os, const Json& v, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        os << Json(key).dump() << (indent < 0 ? ":" : ": ");
        write(os, item, indent, depth + 1);
      }
      newline(depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      os << '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        newline(depth + 1);
        write(os, v[i], indent, depth + 1);
      }
      newline(depth);
      os << ']';
      return;
    }
    case Json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
      os << buf;
      return;
    }
    default:
      os << v.dump();
  }
}

}  // namespace

CompactSetL geometry_from_json(const Json& doc) {
  require(doc.is_object() && doc.contains("components") && doc["components"].is_array(), ErrorCode::InvalidInput,
          "geometry must be an object with a \"components\" array");
  CompactSetL set;
  std::size_t index = 0;
  for (const Json& c : doc["components"]) {
    const std::string where = "component " + std::to_string(index++);
    require(c.is_object() && c.contains("type") && c["type"].is_string(), ErrorCode::InvalidInput,
            where + " needs a string \"type\"");
    const std::string type = c["type"].get<std::string>();
    if (type == "disk") {
      require(c.contains("center") && c.contains("radius"), ErrorCode::InvalidInput,
              where + ": a disk needs center and radius");
      set.components.push_back(Disk{point_from(c["center"], where + " center"),
                                    finite_number(c["radius"], where + " radius")});
    } else if (type == "polygon") {
      require(c.contains("vertices") && c["vertices"].is_array(), ErrorCode::InvalidInput,
              where + ": a polygon needs a vertices array");
      Polygon poly;
      for (const Json& v : c["vertices"]) poly.vertices.push_back(point_from(v, where + " vertex"));
      set.components.push_back(std::move(poly));
    } else {
      fail(ErrorCode::InvalidInput, where + ": unknown type \"" + type + "\"");
    }
  }
  return set;
}

CompactSetL load_geometry(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::InvalidInput, "cannot open geometry file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    fail(ErrorCode::InvalidInput, "malformed geometry JSON in " + path + ": " + e.what());
  }
  return geometry_from_json(doc);
}

Json geometry_to_json(const CompactSetL& set) {
  Json components = Json::array();
  for (const Shape& s : set.components) {
    if (const auto* d = std::get_if<Disk>(&s)) {
      components.push_back({{"type", "disk"}, {"center", {d->center.real(), d->center.imag()}}, {"radius", d->radius}});
    } else {
      Json vertices = Json::array();
      for (const Point& p : std::get<Polygon>(s).vertices) vertices.push_back({p.real(), p.imag()});
      components.push_back({{"type", "polygon"}, {"vertices", vertices}});
    }
  }
  return {{"components", components}};
}

Json number(double value) {
  if (std::isfinite(value)) return value;
  if (std::isnan(value)) return "nan";
  return value > 0 ? "inf" : "-inf";
}

Json tagged(double value, Provenance provenance) {
  return {{"value", number(value)}, {"provenance", to_string(provenance)}};
}

std::string dump(const Json& doc, int indent) {
  std::ostringstream os;
  write(os, doc, indent, 0);
  return os.str();
}

}  // namespace unitay
