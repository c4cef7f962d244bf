#include "pdr/run.hpp"

#include <cmath>
#include <sstream>

#include "pdr/error.hpp"
#include "pdr/preprocess.hpp"

namespace pdr {

namespace fs = std::filesystem;

namespace {

constexpr std::pair<Algorithm, const char*> kNames[] = {
    {Algorithm::seq_ruppert, "seq-ruppert"}, {Algorithm::seq_chew, "seq-chew"},
    {Algorithm::par_ruppert, "par-ruppert"}, {Algorithm::par_chew, "par-chew"},
    {Algorithm::par_generic, "par-generic"},
};

RuleKind rule_of(const JobConfig& c) {
  switch (c.algorithm) {
    case Algorithm::seq_ruppert:
    case Algorithm::par_ruppert: return RuleKind::ruppert;
    case Algorithm::seq_chew:
    case Algorithm::par_chew: return RuleKind::chew;
    case Algorithm::par_generic: return c.generic_rule;
  }
  return RuleKind::ruppert;
}

bool is_parallel(Algorithm a) { return a != Algorithm::seq_ruppert && a != Algorithm::seq_chew; }

// Sequential runs are reported as one round per insertion.
template <class Domain>
Trace sequential_trace(const Domain& d, QualityRule rule, const InsertionLog& log, std::string name, double L) {
  MeshState st(d, rule);
  Trace tr;
  tr.algorithm = std::move(name);
  tr.mode = st.triangulation().mode();
  tr.L = L;
  tr.s = st.reference_size();
  tr.beta = rule.beta;
  tr.initial_max_circumradius = st.max_circumradius();
  for (std::size_t i = 0; i < log.size(); ++i) {
    st.apply(log[i].candidate);
    RoundRecord r;
    r.index = static_cast<int>(i);
    r.candidate_count = 1;
    r.chosen.push_back(log[i].candidate);
    r.inserted = 1;
    r.max_circumradius_after = st.max_circumradius();
    tr.rounds.push_back(std::move(r));
  }
  return tr;
}

template <class Domain>
std::pair<Mesh, Trace> refine(const JobConfig& c, const Domain& d, double L, bool want_trace) {
  const QualityRule rule = QualityRule::make(rule_of(c), c.beta);
  ParallelOptions po;
  po.threads = c.threads;
  po.strict_checks = c.strict_checks;
  po.policy = c.mis;
  ParallelResult pr;
  constexpr bool periodic = std::is_same_v<Domain, PeriodicPointSet>;
  switch (c.algorithm) {
    case Algorithm::seq_ruppert:
    case Algorithm::seq_chew: {
      SeqResult sr = seq_refine(d, rule);
      Trace tr;
      if (want_trace) tr = sequential_trace(d, rule, sr.log, to_string(c.algorithm), L);
      tr.algorithm = to_string(c.algorithm);
      return {std::move(sr.mesh), std::move(tr)};
    }
    case Algorithm::par_ruppert:
      if constexpr (periodic) pr = parallel_ruppert_pps(d, c.beta, po);
      else pr = parallel_ruppert_pslg(d, c.beta, po);
      break;
    case Algorithm::par_chew:
      if constexpr (periodic) pr = parallel_chew_pps(d, c.beta, po);
      else pr = parallel_chew_pslg(d, c.beta, po);
      break;
    case Algorithm::par_generic:
      if constexpr (periodic) pr = parallel_generic_pps(d, rule, po);
      else pr = parallel_generic_pslg(d, rule, po);
      break;
  }
  if (c.strict_checks) {
    if (replay(d, rule, flatten(pr.trace)) != pr.mesh) {
      throw Error(ErrorCode::NotSequentializable, "replaying the flattened rounds gave a different mesh");
    }
  }
  return {std::move(pr.mesh), std::move(pr.trace)};
}

double max_circumradius(const Mesh& m) {
  double r = 0.0;
  for (const TriKey& t : m.triangles) {
    const auto c = m.corners(t);
    r = std::max(r, circumcircle(c[0], c[1], c[2]).radius);
  }
  return r;
}

std::vector<std::string> failed_checks(const JobConfig& c, const Mesh& m, const Trace& tr, const RunReport& rep) {
  std::vector<std::string> out;
  if (rule_of(c) == RuleKind::ruppert) {
    const auto bad = triangles_exceeding(m, c.beta);
    if (!bad.empty()) out.push_back(std::to_string(bad.size()) + " triangle(s) above the radius-edge bound");
  } else if (max_circumradius(m) > c.beta * rep.quality.shortest_edge * (1.0 + 1e-12)) {
    out.push_back("circumradius above beta times the shortest edge");
  }
  if (is_parallel(c.algorithm)) {
    if (const auto v = check_conflict_lemma(tr); !v.empty()) {
      out.push_back(std::to_string(v.size()) + " conflict pair(s) outside the radius window");
    }
    if (const auto v = check_encroach_ratio(tr); !v.empty()) {
      out.push_back(std::to_string(v.size()) + " encroachment(s) below the radius ratio");
    }
    if (rep.bound && !rep.bound->within()) out.push_back("round count above the ceiling");
  }
  return out;
}

}  // namespace

std::optional<Algorithm> parse_algorithm(const std::string& s) {
  for (const auto& [a, n] : kNames) {
    if (s == n) return a;
  }
  return std::nullopt;
}

std::string to_string(Algorithm a) {
  for (const auto& [k, n] : kNames) {
    if (k == a) return n;
  }
  return "?";
}

DomainKind resolve_domain(const JobConfig& c) {
  const DomainKind from_ext = c.input.extension() == ".poly" ? DomainKind::pslg : DomainKind::periodic;
  return c.domain.value_or(from_ext);
}

void validate(const JobConfig& c) {
  if (!(c.beta >= std::sqrt(2.0) * (1.0 - 1e-6))) {
    throw Error(ErrorCode::InvalidConfig, "beta must be at least sqrt(2)");
  }
  if (!(c.alpha > 2.0)) throw Error(ErrorCode::InvalidConfig, "alpha must exceed 2");
  if (c.threads < 1) throw Error(ErrorCode::InvalidConfig, "threads must be positive");
  const DomainKind d = resolve_domain(c);
  if (c.domain && !c.input.empty()) {
    const bool poly = c.input.extension() == ".poly";
    if (poly != (d == DomainKind::pslg)) {
      throw Error(ErrorCode::InvalidConfig, "domain kind does not match input file " + c.input.string());
    }
  }
  if (c.mis == MisPolicy::any_independent && (c.algorithm != Algorithm::par_generic || d != DomainKind::periodic)) {
    throw Error(ErrorCode::InvalidConfig, "a non-maximal MIS is only supported by par-generic on periodic input");
  }
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError: return exit_io;
    case ErrorCode::ParseError:
    case ErrorCode::InvalidDomain:
    case ErrorCode::InvalidConfig:
    case ErrorCode::DegenerateInput:
    case ErrorCode::DuplicateVertex:
    case ErrorCode::DegenerateSegment:
    case ErrorCode::DegenerateTriangle:
    case ErrorCode::NoFeaturePair:
    case ErrorCode::OutOfRange:
    case ErrorCode::BelowFloor:
    case ErrorCode::PreprocessDiverged: return exit_invalid_input;
    default: return exit_invariant;
  }
}

RunResult run(const JobConfig& c) {
  RunResult res;
  try {
    validate(c);
    const bool want_trace = !c.trace.empty();
    res.report.algorithm = to_string(c.algorithm);
    const RuleKind rule = rule_of(c);
    if (resolve_domain(c) == DomainKind::pslg) {
      PolyInput in = read_poly(c.input);
      res.warnings = in.warnings;
      PreprocessOptions po;
      po.threads = c.threads;
      auto [d, pre] = preprocess_boundary(in.domain, po);
      if (rule == RuleKind::ruppert) d = preprocess_feature_conforming(d, c.alpha, c.threads);
      res.report.preprocess_iterations = pre.iterations;
      res.report.preprocess_splits = d.num_live_segments() - in.domain.num_live_segments();
      std::tie(res.mesh, res.trace) = refine(c, d, pslg_diameter(d), want_trace);
      res.report.quality = quality_report(res.mesh, in.domain);
    } else {
      const PeriodicPointSet p = read_periodic(c.input);
      std::tie(res.mesh, res.trace) = refine(c, p, periodic_diameter(), want_trace);
      res.report.quality = quality_report(res.mesh);
    }
    res.report.vertices = res.mesh.vertices.size();
    if (is_parallel(c.algorithm)) res.report.bound = bound_report(res.trace, res.mesh);

    if (!c.out.empty()) write_mesh(c.out, res.mesh);
    if (want_trace) write_text(c.trace, trace_json(res.trace));
    if (!c.svg.empty()) {
      SvgOptions so;
      so.highlight_segments = true;
      so.highlight_poor = rule == RuleKind::ruppert;
      so.beta = c.beta;
      render_svg(c.svg, res.mesh, so);
    }
    if (!c.report.empty()) {
      write_text(c.report, c.report.extension() == ".json" ? report_json(res.report) : report_text(res.report));
    }

    const auto failed = failed_checks(c, res.mesh, res.trace, res.report);
    if (!failed.empty()) {
      res.exit_code = exit_invariant;
      std::ostringstream s;
      s << "InvariantViolation: ";
      for (std::size_t i = 0; i < failed.size(); ++i) s << (i ? "; " : "") << failed[i];
      res.message = s.str();
    }
  } catch (const Error& e) {
    res.exit_code = exit_code_for(e.code());
    res.message = e.what();
  } catch (const fs::filesystem_error& e) {
    res.exit_code = exit_io;
    res.message = std::string("IoError: ") + e.what();
  }
  return res;
}

}  // namespace pdr
