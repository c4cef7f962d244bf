#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "pdr/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Delaunay refinement mesher (sequential and round-based parallel Ruppert/Chew)"};
  app.require_subcommand(1);

  pdr::JobConfig cfg;
  std::string algo = "par-ruppert";
  std::string domain = "auto";
  std::string rule = "ruppert";
  std::string mis = "maximal";
  std::string out, trace, svg, report;

  CLI::App* refine = app.add_subcommand("refine", "preprocess and refine a domain");
  refine->add_option("input", cfg.input, ".poly file, or a periodic point list (one 'x y' per line)")
      ->required()
      ->check(CLI::ExistingFile);
  refine->add_option("--algo", algo, "seq-ruppert | seq-chew | par-ruppert | par-chew | par-generic")
      ->capture_default_str();
  refine->add_option("--domain", domain, "auto | pslg | periodic")->capture_default_str();
  refine->add_option("--beta", cfg.beta, "radius-edge bound, at least sqrt(2)")->capture_default_str();
  refine->add_option("--alpha", cfg.alpha, "feature-conforming factor, above 2")->capture_default_str();
  refine->add_option("--rule", rule, "quality rule of par-generic: ruppert | chew")->capture_default_str();
  refine->add_option("--mis", mis, "maximal | any (par-generic, periodic only)")->capture_default_str();
  refine->add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
  refine->add_option("--out", out, "mesh output stem (.node/.ele/.poly)");
  refine->add_option("--trace", trace, "round trace JSON");
  refine->add_option("--svg", svg, "SVG rendering");
  refine->add_option("--report", report, "quality/bound report (.json, otherwise key=value)");
  refine->add_flag("--strict-checks", cfg.strict_checks, "brute-force MIS checks and replay verification");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : pdr::exit_invalid_input;
  }

  const auto a = pdr::parse_algorithm(algo);
  const std::map<std::string, std::optional<pdr::DomainKind>> domains{
      {"auto", std::nullopt}, {"pslg", pdr::DomainKind::pslg}, {"periodic", pdr::DomainKind::periodic}};
  if (!a || !domains.contains(domain) || (rule != "ruppert" && rule != "chew") || (mis != "maximal" && mis != "any")) {
    std::cerr << "InvalidConfig: unknown --algo, --domain, --rule or --mis value\n";
    return pdr::exit_invalid_input;
  }
  cfg.algorithm = *a;
  cfg.domain = domains.at(domain);
  cfg.generic_rule = rule == "chew" ? pdr::RuleKind::chew : pdr::RuleKind::ruppert;
  cfg.mis = mis == "any" ? pdr::MisPolicy::any_independent : pdr::MisPolicy::maximal;
  cfg.out = out;
  cfg.trace = trace;
  cfg.svg = svg;
  cfg.report = report;

  const pdr::RunResult res = pdr::run(cfg);
  for (const std::string& w : res.warnings) std::cerr << "warning: " << w << '\n';
  if (res.exit_code != pdr::exit_ok && res.report.quality.triangle_count == 0) {
    std::cerr << res.message << '\n';
    return res.exit_code;
  }
  std::cout << pdr::report_text(res.report);
  if (res.exit_code != pdr::exit_ok) std::cerr << res.message << '\n';
  return res.exit_code;
}
