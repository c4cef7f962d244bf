#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pdr/analysis.hpp"
#include "pdr/domain.hpp"
#include "pdr/parallel_refine.hpp"
#include "pdr/refine.hpp"

namespace pdr {

struct PolyInput {
  Pslg domain;
  std::vector<std::string> warnings;
  bool hull_synthesized = false;
};

/// Triangle-style .poly. Comments start with '#'. Vertex numbering starts at
/// the index of the first vertex line (0 or 1). With no segments, the convex
/// hull boundary is used. Holes and regions are read and ignored.
/// Throws ParseError (message carries the line number), InvalidDomain, IoError.
PolyInput read_poly(const std::filesystem::path& path);
PolyInput parse_poly(std::istream& in, const std::string& name = "<poly>");

/// Writes <stem>.node, <stem>.ele and, for planar meshes with segments,
/// <stem>.poly. Periodic triangles carry the six lattice offsets as element
/// attributes. Throws EmptyMesh, IoError.
void write_mesh(const std::filesystem::path& stem, const Mesh& m);
Mesh read_mesh(const std::filesystem::path& stem);

/// One "x y" pair per line, '#' comments allowed.
PeriodicPointSet read_periodic(const std::filesystem::path& path);
PeriodicPointSet parse_periodic(std::istream& in, const std::string& name = "<points>");

struct SvgOptions {
  double size = 800.0;  // pixels along the longer side
  bool highlight_segments = false;
  bool highlight_poor = false;
  double beta = 1.4142135623730951;
};

/// One <polyline> per mesh edge, then one <polygon> per poor triangle when
/// highlighted. Throws EmptyMesh.
std::string svg_string(const Mesh& m, const SvgOptions& options = {});
void render_svg(const std::filesystem::path& path, const Mesh& m, const SvgOptions& options = {});

std::string trace_json(const Trace& trace);
Trace parse_trace_json(const std::string& text);

struct RunReport {
  std::string algorithm;
  QualityReport quality;
  std::optional<BoundReport> bound;
  std::size_t vertices = 0;
  std::size_t preprocess_iterations = 0;
  std::size_t preprocess_splits = 0;
};

std::string report_json(const RunReport& r);
/// key=value lines in a fixed order.
std::string report_text(const RunReport& r);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace pdr
