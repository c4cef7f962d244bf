#include "pdr/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "pdr/error.hpp"

namespace pdr {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Splits a stream into whitespace-separated token lines, skipping comments
/// and blank lines while keeping track of the physical line number.
class LineReader {
 public:
  LineReader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ss(line);
      tokens.clear();
      for (std::string t; ss >> t;) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::vector<std::string> require(const char* what) {
    std::vector<std::string> t;
    if (!next(t)) fail(std::string("unexpected end of file, expected ") + what);
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, name_ + ":" + std::to_string(line_no_) + ": " + msg);
  }

  long long to_int(const std::string& s) const {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      fail("expected an integer, got '" + s + "'");
    }
    if (used != s.size()) fail("expected an integer, got '" + s + "'");
    return v;
  }

  double to_double(const std::string& s) const {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      fail("expected a number, got '" + s + "'");
    }
    if (used != s.size()) fail("expected a number, got '" + s + "'");
    return v;
  }

  int line() const { return line_no_; }

 private:
  std::istream& in_;
  std::string name_;
  int line_no_ = 0;
};

std::ifstream open_in(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + p.string() + " for reading");
  return in;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + p.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& p) {
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + p.string());
}

fs::path with_ext(const fs::path& stem, const char* ext) { return fs::path(stem.string() + ext); }

// The header of a count section: "<count> ...". Returns the count.
long long section_count(LineReader& r, const std::vector<std::string>& t, const char* what) {
  const long long n = r.to_int(t[0]);
  if (n < 0) r.fail(std::string("negative ") + what + " count");
  return n;
}

json circle_json(const Circle& c) { return json::array({c.center.x, c.center.y, c.radius}); }

Circle circle_from(const json& j) { return {{j.at(0).get<double>(), j.at(1).get<double>()}, j.at(2).get<double>()}; }

json tri_json(const TriKey& t) {
  json a = json::array();
  for (const VertexRef& v : t.v) a.push_back(json::array({v.id, v.dx, v.dy}));
  return a;
}

TriKey tri_from(const json& j) {
  TriKey t;
  for (std::size_t i = 0; i < 3; ++i) {
    t.v[i].id = j.at(i).at(0).get<int>();
    t.v[i].dx = static_cast<std::int8_t>(j.at(i).at(1).get<int>());
    t.v[i].dy = static_cast<std::int8_t>(j.at(i).at(2).get<int>());
  }
  return t;
}

CandidateKind kind_from(const std::string& s) {
  for (CandidateKind k : {CandidateKind::D_T, CandidateKind::D_B, CandidateKind::C, CandidateKind::B}) {
    if (to_string(k) == s) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown candidate kind '" + s + "'");
}

json quality_json(const QualityReport& q) {
  json j = {{"triangles", q.triangle_count},        {"edges", q.edge_count},
            {"min_angle_deg", q.min_angle_deg},     {"max_ratio", q.max_ratio},
            {"shortest_edge", q.shortest_edge},     {"longest_edge", q.longest_edge},
            {"quasi_uniformity", q.quasi_uniformity}};
  if (q.edge_lfs_min) {
    j["edge_lfs_min"] = *q.edge_lfs_min;
    j["edge_lfs_max"] = *q.edge_lfs_max;
  }
  return j;
}

}  // namespace

PolyInput parse_poly(std::istream& in, const std::string& name) {
  LineReader r(in, name);
  PolyInput out;

  auto t = r.require("vertex header");
  const long long nv = section_count(r, t, "vertex");
  if (nv == 0) r.fail("vertices in a separate .node file are not supported");
  if (t.size() >= 2 && r.to_int(t[1]) != 2) r.fail("dimension must be 2");
  const long long nattr = t.size() >= 3 ? r.to_int(t[2]) : 0;
  const long long nmark = t.size() >= 4 ? r.to_int(t[3]) : 0;
  if (nattr < 0 || nmark < 0 || nmark > 1) r.fail("bad attribute or marker count");

  std::vector<Point> pts;
  long long base = 0;
  for (long long i = 0; i < nv; ++i) {
    t = r.require("vertex line");
    if (static_cast<long long>(t.size()) < 3) r.fail("vertex line needs an index and two coordinates");
    const long long idx = r.to_int(t[0]);
    if (i == 0) {
      if (idx != 0 && idx != 1) r.fail("vertex numbering must start at 0 or 1");
      base = idx;
    }
    if (idx != base + i) r.fail("vertex index " + std::to_string(idx) + " out of sequence");
    pts.push_back({r.to_double(t[1]), r.to_double(t[2])});
  }

  std::vector<std::pair<int, int>> segs;
  t = r.require("segment header");
  const long long ns = section_count(r, t, "segment");
  for (long long i = 0; i < ns; ++i) {
    t = r.require("segment line");
    if (t.size() < 3) r.fail("segment line needs an index and two endpoints");
    const long long a = r.to_int(t[1]) - base, b = r.to_int(t[2]) - base;
    if (a < 0 || a >= nv || b < 0 || b >= nv) {
      r.fail("segment references vertex " + std::to_string(a < 0 || a >= nv ? a + base : b + base) + " of " +
             std::to_string(nv));
    }
    segs.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }

  if (r.next(t)) {
    const long long nh = section_count(r, t, "hole");
    for (long long i = 0; i < nh; ++i) r.require("hole line");
    if (nh > 0) out.warnings.push_back(std::to_string(nh) + " hole(s) ignored");
    if (r.next(t)) {
      const long long nr = section_count(r, t, "region");
      for (long long i = 0; i < nr; ++i) r.require("region line");
      if (nr > 0) out.warnings.push_back(std::to_string(nr) + " region(s) ignored");
      if (r.next(t)) r.fail("unexpected trailing content");
    }
  }

  if (segs.empty()) {
    const std::vector<int> hull = convex_hull(pts);
    if (hull.size() < 3) throw Error(ErrorCode::InvalidDomain, name + ": convex hull is degenerate");
    for (std::size_t i = 0; i < hull.size(); ++i) segs.emplace_back(hull[i], hull[(i + 1) % hull.size()]);
    out.hull_synthesized = true;
  }
  out.domain = Pslg(std::move(pts), segs);
  const ValidationReport v = validate_pslg(out.domain);
  if (!v.ok()) {
    std::string why;
    if (!v.duplicate_vertices.empty()) why = "duplicate vertices";
    else if (!v.degenerate_segments.empty()) why = "degenerate segment";
    else if (!v.crossings.empty()) why = "crossing segments";
    else if (!v.vertex_on_segment.empty()) why = "vertex lies on a segment";
    else why = "input angle below 90 degrees";
    throw Error(ErrorCode::InvalidDomain, name + ": " + why);
  }
  return out;
}

PolyInput read_poly(const fs::path& path) {
  std::ifstream in = open_in(path);
  return parse_poly(in, path.string());
}

void write_mesh(const fs::path& stem, const Mesh& m) {
  if (m.triangles.empty()) throw Error(ErrorCode::EmptyMesh, "refusing to write an empty mesh");
  std::vector<char> on_segment(m.vertices.size(), 0);
  for (const auto& [a, b] : m.segments) on_segment[static_cast<std::size_t>(a)] = on_segment[static_cast<std::size_t>(b)] = 1;

  const fs::path node = with_ext(stem, ".node");
  std::ofstream out = open_out(node);
  out << m.vertices.size() << " 2 0 1\n";
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    out << i << ' ' << fmt17(m.vertices[i].x) << ' ' << fmt17(m.vertices[i].y) << ' '
        << static_cast<int>(on_segment[i]) << '\n';
  }
  finish(out, node);

  const bool periodic = m.mode == Mode::periodic;
  const fs::path ele = with_ext(stem, ".ele");
  out = open_out(ele);
  out << m.triangles.size() << " 3 " << (periodic ? 6 : 0) << '\n';
  for (std::size_t i = 0; i < m.triangles.size(); ++i) {
    const TriKey& t = m.triangles[i];
    out << i << ' ' << t.v[0].id << ' ' << t.v[1].id << ' ' << t.v[2].id;
    if (periodic) {
      for (const VertexRef& v : t.v) out << ' ' << static_cast<int>(v.dx) << ' ' << static_cast<int>(v.dy);
    }
    out << '\n';
  }
  finish(out, ele);

  if (!periodic && !m.segments.empty()) {
    const fs::path poly = with_ext(stem, ".poly");
    out = open_out(poly);
    out << "0 2 0 1\n" << m.segments.size() << " 0\n";
    for (std::size_t i = 0; i < m.segments.size(); ++i) {
      out << i << ' ' << m.segments[i].first << ' ' << m.segments[i].second << '\n';
    }
    out << "0\n";
    finish(out, poly);
  }
}

Mesh read_mesh(const fs::path& stem) {
  Mesh m;
  {
    const fs::path node = with_ext(stem, ".node");
    std::ifstream in = open_in(node);
    LineReader r(in, node.string());
    auto t = r.require("node header");
    const long long n = section_count(r, t, "vertex");
    for (long long i = 0; i < n; ++i) {
      t = r.require("node line");
      if (t.size() < 3 || r.to_int(t[0]) != i) r.fail("bad node line");
      m.vertices.push_back({r.to_double(t[1]), r.to_double(t[2])});
    }
  }
  {
    const fs::path ele = with_ext(stem, ".ele");
    std::ifstream in = open_in(ele);
    LineReader r(in, ele.string());
    auto t = r.require("element header");
    const long long n = section_count(r, t, "element");
    const long long nattr = t.size() >= 3 ? r.to_int(t[2]) : 0;
    if (nattr != 0 && nattr != 6) r.fail("expected 0 or 6 element attributes");
    m.mode = nattr == 6 ? Mode::periodic : Mode::planar;
    const auto nv = static_cast<long long>(m.vertices.size());
    for (long long i = 0; i < n; ++i) {
      t = r.require("element line");
      if (static_cast<long long>(t.size()) != 4 + nattr || r.to_int(t[0]) != i) r.fail("bad element line");
      TriKey k;
      for (std::size_t j = 0; j < 3; ++j) {
        const long long id = r.to_int(t[1 + j]);
        if (id < 0 || id >= nv) r.fail("element references missing vertex " + std::to_string(id));
        k.v[j].id = static_cast<int>(id);
        if (nattr == 6) {
          k.v[j].dx = static_cast<std::int8_t>(r.to_int(t[4 + 2 * j]));
          k.v[j].dy = static_cast<std::int8_t>(r.to_int(t[5 + 2 * j]));
        }
      }
      m.triangles.push_back(k);
    }
  }
  const fs::path poly = with_ext(stem, ".poly");
  if (fs::exists(poly)) {
    std::ifstream in = open_in(poly);
    LineReader r(in, poly.string());
    r.require("poly header");
    auto t = r.require("segment header");
    const long long n = section_count(r, t, "segment");
    for (long long i = 0; i < n; ++i) {
      t = r.require("segment line");
      if (t.size() < 3) r.fail("bad segment line");
      m.segments.emplace_back(static_cast<int>(r.to_int(t[1])), static_cast<int>(r.to_int(t[2])));
    }
  }
  return m;
}

PeriodicPointSet parse_periodic(std::istream& in, const std::string& name) {
  LineReader r(in, name);
  std::vector<Point> pts;
  std::vector<std::string> t;
  while (r.next(t)) {
    if (t.size() != 2) r.fail("expected 'x y'");
    const Point p{r.to_double(t[0]), r.to_double(t[1])};
    if (!(p.x >= 0.0 && p.x < 1.0 && p.y >= 0.0 && p.y < 1.0)) {
      throw Error(ErrorCode::InvalidDomain, name + ":" + std::to_string(r.line()) + ": point outside [0,1)^2");
    }
    pts.push_back(p);
  }
  return PeriodicPointSet(std::move(pts));
}

PeriodicPointSet read_periodic(const fs::path& path) {
  std::ifstream in = open_in(path);
  return parse_periodic(in, path.string());
}

std::string svg_string(const Mesh& m, const SvgOptions& o) {
  if (m.triangles.empty()) throw Error(ErrorCode::EmptyMesh, "nothing to render");
  const auto edges = mesh_edges(m);
  const auto pos = [&](VertexRef v) {
    const Point p = m.vertices[static_cast<std::size_t>(v.id)];
    return Point{p.x + v.dx, p.y + v.dy};
  };
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const TriKey& t : m.triangles) {
    for (const Point& p : m.corners(t)) {
      x0 = std::min(x0, p.x);
      y0 = std::min(y0, p.y);
      x1 = std::max(x1, p.x);
      y1 = std::max(y1, p.y);
    }
  }
  const double span = std::max(x1 - x0, y1 - y0);
  const double scale = o.size / span;
  const double w = (x1 - x0) * scale, h = (y1 - y0) * scale;
  // y grows downwards in SVG
  const auto px = [&](Point p) { return fmt17((p.x - x0) * scale) + "," + fmt17((y1 - p.y) * scale); };

  std::map<std::pair<int, int>, bool> seg;
  if (o.highlight_segments) {
    for (auto [a, b] : m.segments) seg[{std::min(a, b), std::max(a, b)}] = true;
  }

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt17(w) << "\" height=\""
    << fmt17(h) << "\" viewBox=\"0 0 " << fmt17(w) << ' ' << fmt17(h) << "\">\n";
  s << "<g id=\"edges\" fill=\"none\" stroke=\"black\" stroke-width=\"0.5\">\n";
  for (const EdgeKey& e : edges) {
    const bool is_seg = m.mode == Mode::planar && seg.contains({std::min(e.a.id, e.b.id), std::max(e.a.id, e.b.id)});
    s << "<polyline points=\"" << px(pos(e.a)) << ' ' << px(pos(e.b)) << '"';
    if (is_seg) s << " class=\"segment\" stroke=\"blue\" stroke-width=\"1.5\"";
    s << "/>\n";
  }
  s << "</g>\n";
  if (o.highlight_poor) {
    s << "<g id=\"poor\" fill=\"red\" fill-opacity=\"0.4\" stroke=\"none\">\n";
    for (const TriKey& t : triangles_exceeding(m, o.beta)) {
      const auto c = m.corners(t);
      s << "<polygon class=\"poor\" points=\"" << px(c[0]) << ' ' << px(c[1]) << ' ' << px(c[2]) << "\"/>\n";
    }
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void render_svg(const fs::path& path, const Mesh& m, const SvgOptions& options) {
  write_text(path, svg_string(m, options));
}

std::string trace_json(const Trace& tr) {
  json rounds = json::array();
  for (const RoundRecord& r : tr.rounds) {
    json chosen = json::array();
    for (const Candidate& c : r.chosen) {
      json jc = {{"kind", std::string(to_string(c.kind))},
                 {"location", json::array({c.location.x, c.location.y})},
                 {"circle", circle_json(c.circle)}};
      if (is_midpoint(c.kind)) {
        jc["segment"] = c.segment;
      } else {
        jc["triangle"] = tri_json(c.triangle);
      }
      chosen.push_back(std::move(jc));
    }
    json conflicts = json::array();
    for (const ConflictRecord& c : r.conflicts) {
      conflicts.push_back(json::array(
          {c.r_leader, c.r_other, std::string(to_string(c.leader_kind)), std::string(to_string(c.other_kind))}));
    }
    json enc = json::array();
    for (const EncroachRecord& e : r.encroachments) enc.push_back(json::array({e.r_c, e.r_d}));
    rounds.push_back({{"index", r.index},
                      {"edge_class", r.edge_class},
                      {"inner", r.inner},
                      {"sweep", r.sweep},
                      {"candidates", r.candidate_count},
                      {"inserted", r.inserted},
                      {"deferred", r.deferred},
                      {"max_circumradius_after", r.max_circumradius_after},
                      {"conservation_violations", r.conservation_violations},
                      {"upgrade_violations", r.upgrade_violations},
                      {"chosen", std::move(chosen)},
                      {"conflicts", std::move(conflicts)},
                      {"encroachments", std::move(enc)}});
  }
  const json j = {{"algorithm", tr.algorithm},
                  {"mode", tr.mode == Mode::periodic ? "periodic" : "planar"},
                  {"L", tr.L},
                  {"s", tr.s},
                  {"beta", tr.beta},
                  {"initial_max_circumradius", tr.initial_max_circumradius},
                  {"sweep_rounds", tr.sweep_rounds},
                  {"sub_s_edges", tr.sub_s_edges},
                  {"max_splits_per_class", tr.max_splits_per_class},
                  {"max_encroach_ratio", tr.max_encroach_ratio},
                  {"rounds", std::move(rounds)}};
  return j.dump(1) + "\n";
}

Trace parse_trace_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    Trace tr;
    tr.algorithm = j.at("algorithm").get<std::string>();
    tr.mode = j.at("mode").get<std::string>() == "periodic" ? Mode::periodic : Mode::planar;
    tr.L = j.at("L").get<double>();
    tr.s = j.at("s").get<double>();
    tr.beta = j.at("beta").get<double>();
    tr.initial_max_circumradius = j.at("initial_max_circumradius").get<double>();
    tr.sweep_rounds = j.at("sweep_rounds").get<std::size_t>();
    tr.sub_s_edges = j.at("sub_s_edges").get<std::size_t>();
    tr.max_splits_per_class = j.at("max_splits_per_class").get<std::size_t>();
    tr.max_encroach_ratio = j.at("max_encroach_ratio").get<double>();
    for (const json& jr : j.at("rounds")) {
      RoundRecord r;
      r.index = jr.at("index").get<int>();
      r.edge_class = jr.at("edge_class").get<int>();
      r.inner = jr.at("inner").get<int>();
      r.sweep = jr.at("sweep").get<bool>();
      r.candidate_count = jr.at("candidates").get<std::size_t>();
      r.inserted = jr.at("inserted").get<std::size_t>();
      r.deferred = jr.at("deferred").get<std::size_t>();
      r.max_circumradius_after = jr.at("max_circumradius_after").get<double>();
      r.conservation_violations = jr.at("conservation_violations").get<std::size_t>();
      r.upgrade_violations = jr.at("upgrade_violations").get<std::size_t>();
      for (const json& jc : jr.at("chosen")) {
        Candidate c;
        c.kind = kind_from(jc.at("kind").get<std::string>());
        c.location = {jc.at("location").at(0).get<double>(), jc.at("location").at(1).get<double>()};
        c.circle = circle_from(jc.at("circle"));
        if (is_midpoint(c.kind)) {
          c.segment = jc.at("segment").get<int>();
        } else {
          c.triangle = tri_from(jc.at("triangle"));
        }
        c.birth_round = r.index;
        r.chosen.push_back(c);
      }
      for (const json& jc : jr.at("conflicts")) {
        r.conflicts.push_back({jc.at(0).get<double>(), jc.at(1).get<double>(), kind_from(jc.at(2).get<std::string>()),
                               kind_from(jc.at(3).get<std::string>())});
      }
      for (const json& je : jr.at("encroachments")) r.encroachments.push_back({je.at(0).get<double>(), je.at(1).get<double>()});
      tr.rounds.push_back(std::move(r));
    }
    return tr;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("trace: ") + e.what());
  }
}

std::string report_json(const RunReport& r) {
  json j = {{"algorithm", r.algorithm},
            {"vertices", r.vertices},
            {"preprocess_iterations", r.preprocess_iterations},
            {"preprocess_splits", r.preprocess_splits},
            {"quality", quality_json(r.quality)}};
  if (r.bound) {
    json b = {{"rounds", r.bound->rounds_used},
              {"L", r.bound->L},
              {"s", r.bound->s},
              {"within_ceiling", r.bound->within()},
              {"max_circumradius_series", r.bound->series}};
    b["ceiling"] = r.bound->ceiling ? json(*r.bound->ceiling) : json(nullptr);
    j["bound"] = std::move(b);
  }
  return j.dump(1) + "\n";
}

std::string report_text(const RunReport& r) {
  std::ostringstream s;
  const QualityReport& q = r.quality;
  s << "algorithm=" << r.algorithm << '\n'
    << "vertices=" << r.vertices << '\n'
    << "preprocess_iterations=" << r.preprocess_iterations << '\n'
    << "preprocess_splits=" << r.preprocess_splits << '\n'
    << "triangles=" << q.triangle_count << '\n'
    << "edges=" << q.edge_count << '\n'
    << "min_angle_deg=" << fmt17(q.min_angle_deg) << '\n'
    << "max_ratio=" << fmt17(q.max_ratio) << '\n'
    << "shortest_edge=" << fmt17(q.shortest_edge) << '\n'
    << "longest_edge=" << fmt17(q.longest_edge) << '\n'
    << "quasi_uniformity=" << fmt17(q.quasi_uniformity) << '\n';
  if (q.edge_lfs_min) {
    s << "edge_lfs_min=" << fmt17(*q.edge_lfs_min) << '\n' << "edge_lfs_max=" << fmt17(*q.edge_lfs_max) << '\n';
  }
  if (r.bound) {
    s << "rounds=" << r.bound->rounds_used << '\n'
      << "ceiling=" << (r.bound->ceiling ? std::to_string(*r.bound->ceiling) : std::string("none")) << '\n'
      << "L=" << fmt17(r.bound->L) << '\n'
      << "s=" << fmt17(r.bound->s) << '\n'
      << "within_ceiling=" << (r.bound->within() ? "true" : "false") << '\n';
  }
  return s.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out = open_out(path);
  out << text;
  finish(out, path);
}

}  // namespace pdr
