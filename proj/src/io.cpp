#include "dhtk/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dhtk/errors.hpp"

namespace dhtk {

namespace {

using json = nlohmann::ordered_json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return j;
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw ParseError(std::string("missing field \"") + name + "\"");
  return j[name];
}

Rational rational_field(const json& j) {
  if (!j.is_string()) throw ParseError("rationals must be \"p/q\" strings");
  return parse_rational(j.get<std::string>());
}

long long int_field(const json& j) {
  if (!j.is_number_integer()) throw ParseError("expected an integer");
  return j.get<long long>();
}

json rationals_to_json(const std::vector<Rational>& xs) {
  json out = json::array();
  for (const Rational& x : xs) out.push_back(to_string(x));
  return out;
}

std::vector<Rational> rationals_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& item : j) out.push_back(rational_field(item));
  return out;
}

json point_to_json(const RVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

RVec point_from_json(const json& j) {
  std::vector<Rational> coords = rationals_from_json(j);
  if (coords.empty()) throw ParseError("points need at least one coordinate");
  RVec v(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) v(static_cast<Eigen::Index>(i)) = coords[i];
  return v;
}

json points_to_json(const std::vector<RVec>& vs) {
  json out = json::array();
  for (const RVec& v : vs) out.push_back(point_to_json(v));
  return out;
}

std::vector<RVec> points_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of points");
  std::vector<RVec> out;
  for (const auto& item : j) out.push_back(point_from_json(item));
  return out;
}

json extremal_to_json(const ExtremalSet& e) {
  json out;
  if (const auto* iso = std::get_if<IsolatedExtremum>(&e)) {
    out["kind"] = "isolated_point";
    out["level"] = to_string(iso->level);
    out["weight1"] = iso->weight1;
    out["weight2"] = iso->weight2;
    out["order"] = iso->order;
  } else {
    const auto& surf = std::get<SurfaceExtremum>(e);
    out["kind"] = "fixed_surface";
    out["level"] = to_string(surf.level);
    out["area"] = to_string(surf.area);
    out["euler_integral"] = to_string(surf.euler_integral);
  }
  return out;
}

ExtremalSet extremal_from_json(const json& j) {
  const json& kind = field(j, "kind");
  if (!kind.is_string()) throw ParseError("extremal set kind must be a string");
  std::string k = kind.get<std::string>();
  if (k == "isolated_point")
    return IsolatedExtremum{rational_field(field(j, "level")), int_field(field(j, "weight1")),
                            int_field(field(j, "weight2")), int_field(field(j, "order"))};
  if (k == "fixed_surface")
    return SurfaceExtremum{rational_field(field(j, "level")), rational_field(field(j, "area")),
                           rational_field(field(j, "euler_integral"))};
  throw ParseError("unknown extremal set kind: \"" + k + "\"");
}

}  // namespace

std::string density_to_json(const PLDensity& f) {
  PLDensity c = f.canonical();
  json out;
  out["breakpoints"] = rationals_to_json(c.breakpoints());
  out["values"] = rationals_to_json(c.values());
  return out.dump(2) + "\n";
}

PLDensity density_from_json(const std::string& text) {
  json j = parse(text);
  std::vector<Rational> bs = rationals_from_json(field(j, "breakpoints"));
  std::vector<Rational> vs = rationals_from_json(field(j, "values"));
  try {
    return PLDensity(std::move(bs), std::move(vs));
  } catch (const InputError& e) {
    throw ParseError(std::string("invalid density: ") + e.what());
  }
}

std::string density_to_csv(const PLDensity& f) {
  std::ostringstream out;
  out << "t,value,right_slope\n";
  const auto& bs = f.breakpoints();
  for (std::size_t i = 0; i < bs.size(); ++i) {
    Rational right = (i + 1 < bs.size()) ? f.slope(i) : Rational(0);
    out << to_string(bs[i]) << "," << to_string(f.values()[i]) << ","
        << to_string(right) << "\n";
  }
  return out.str();
}

std::string s1data_to_json(const S1FixedPointData& data) {
  json out;
  out["min"] = extremal_to_json(data.min());
  out["max"] = extremal_to_json(data.max());
  out["interior"] = json::array();
  for (const auto& p : data.interior()) {
    json q;
    q["level"] = to_string(p.level);
    q["weight1"] = p.weight1;
    q["weight2"] = p.weight2;
    q["order"] = p.order;
    out["interior"].push_back(q);
  }
  return out.dump(2) + "\n";
}

S1FixedPointData s1data_from_json(const std::string& text) {
  json j = parse(text);
  ExtremalSet min = extremal_from_json(field(j, "min"));
  ExtremalSet max = extremal_from_json(field(j, "max"));
  const json& interior = field(j, "interior");
  if (!interior.is_array()) throw ParseError("interior must be an array");
  std::vector<InteriorFixedPoint> pts;
  for (const auto& q : interior)
    pts.push_back(InteriorFixedPoint{rational_field(field(q, "level")),
                                     int_field(field(q, "weight1")),
                                     int_field(field(q, "weight2")),
                                     int_field(field(q, "order"))});
  try {
    return S1FixedPointData(std::move(min), std::move(max), std::move(pts));
  } catch (const InputError& e) {
    throw ParseError(std::string("invalid fixed-point data: ") + e.what());
  }
}

std::string polytope_to_json(const Polytope& p) {
  json out;
  out["dimension"] = p.dimension();
  out["vertices"] = points_to_json(p.vertices());
  return out.dump(2) + "\n";
}

Polytope polytope_from_json(const std::string& text) {
  json j = parse(text);
  long long dim = int_field(field(j, "dimension"));
  std::vector<RVec> vertices = points_from_json(field(j, "vertices"));
  for (const RVec& v : vertices)
    if (v.size() != dim) throw ParseError("vertex does not match the declared dimension");
  try {
    return Polytope(static_cast<int>(dim), std::move(vertices));
  } catch (const InputError& e) {
    throw ParseError(std::string("invalid polytope: ") + e.what());
  }
}

std::string xray_to_json(const XRay& xray) {
  json out;
  out["ambient_dim"] = xray.ambient_dim();
  out["moment_image"] = parse(polytope_to_json(xray.moment_image()));
  out["faces"] = json::array();
  for (const Face& f : xray.faces()) {
    json q;
    q["label"] = f.label;
    q["dim"] = f.dim;
    q["basis"] = points_to_json(f.basis);
    q["vertices"] = points_to_json(f.vertices);
    out["faces"].push_back(q);
  }
  return out.dump(2) + "\n";
}

XRay xray_from_json(const std::string& text) {
  json j = parse(text);
  long long ambient = int_field(field(j, "ambient_dim"));
  Polytope image = polytope_from_json(field(j, "moment_image").dump());
  const json& faces_json = field(j, "faces");
  if (!faces_json.is_array()) throw ParseError("faces must be an array");
  std::vector<Face> faces;
  for (const auto& q : faces_json) {
    const json& label = field(q, "label");
    if (!label.is_string()) throw ParseError("face label must be a string");
    Face f;
    f.label = label.get<std::string>();
    f.dim = static_cast<int>(int_field(field(q, "dim")));
    f.basis = points_from_json(field(q, "basis"));
    f.vertices = points_from_json(field(q, "vertices"));
    faces.push_back(std::move(f));
  }
  try {
    return XRay(static_cast<int>(ambient), std::move(image), std::move(faces));
  } catch (const InputError& e) {
    throw ParseError(std::string("invalid x-ray: ") + e.what());
  }
}

std::string selection_to_json(const LineSelection& selection) {
  json out;
  out["xi0"] = point_to_json(selection.xi0);
  out["xi1"] = point_to_json(selection.xi1);
  out["direction"] = point_to_json(selection.direction.coords());
  out["crossings"] = json::array();
  for (const Crossing& c : selection.crossings) {
    json q;
    q["label"] = c.label;
    q["point"] = point_to_json(c.point);
    out["crossings"].push_back(q);
  }
  out["certificate"] = json::object();
  for (const auto& [label, cls] : selection.certificate)
    out["certificate"][label] = to_string(cls);
  out["attempts"] = selection.attempts;
  out["grid_exponent"] = selection.grid_exponent;
  return out.dump(2) + "\n";
}

std::string subtorus_to_json(const SubtorusSplit& split) {
  json out;
  out["kernel"] = point_to_json(split.kernel.coords());
  out["complement"] = json::array();
  for (const Direction& d : split.complement)
    out["complement"].push_back(point_to_json(d.coords()));
  out["det"] = to_string(split.det);
  return out.dump(2) + "\n";
}

std::string histogram_to_csv(const Histogram& hist, const Rational& mass) {
  std::ostringstream out;
  out << "bin_left,bin_right,count,density_estimate\n";
  out.precision(17);
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    double width = hist.bin_edges[i + 1] - hist.bin_edges[i];
    double estimate = static_cast<double>(hist.counts[i]) /
                      static_cast<double>(hist.total_samples) * to_double(mass) / width;
    out << hist.bin_edges[i] << "," << hist.bin_edges[i + 1] << "," << hist.counts[i]
        << "," << estimate << "\n";
  }
  return out.str();
}

std::string density_to_svg(const PLDensity& f) {
  const double width = 640, height = 400, margin = 60;
  const double x_lo = to_double(f.support_min());
  const double x_hi = to_double(f.support_max());
  double y_hi = 0;
  for (const Rational& v : f.values()) y_hi = std::max(y_hi, to_double(v));
  if (y_hi <= 0) y_hi = 1;

  auto px = [&](double t) { return margin + (t - x_lo) / (x_hi - x_lo) * (width - 2 * margin); };
  auto py = [&](double v) { return height - margin - v / y_hi * (height - 2 * margin); };

  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "  <line x1=\"" << margin << "\" y1=\"" << py(0) << "\" x2=\"" << width - margin
      << "\" y2=\"" << py(0) << "\" stroke=\"black\"/>\n";
  svg << "  <line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
      << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";

  svg << "  <polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
    if (i) svg << " ";
    svg << px(to_double(f.breakpoints()[i])) << "," << py(to_double(f.values()[i]));
  }
  svg << "\"/>\n";

  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
    double x = px(to_double(f.breakpoints()[i]));
    svg << "  <line x1=\"" << x << "\" y1=\"" << py(0) - 4 << "\" x2=\"" << x << "\" y2=\""
        << py(0) + 4 << "\" stroke=\"black\"/>\n";
    svg << "  <text x=\"" << x << "\" y=\"" << py(0) + 20
        << "\" text-anchor=\"middle\" font-size=\"12\">" << to_string(f.breakpoints()[i])
        << "</text>\n";
  }
  svg << "  <text x=\"" << margin - 8 << "\" y=\"" << py(y_hi)
      << "\" text-anchor=\"end\" font-size=\"12\">" << y_hi << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
}

std::string file_digest(const std::string& path) {
  std::uint64_t h = fnv1a64(read_file(path));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace dhtk
