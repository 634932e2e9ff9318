// Command-line interface: verify-presentation, build, homology, farrell,
// report.  Exit codes: 0 success, 1 failed identity or expectation, 2 bad
// arguments or malformed input.

#include "palmod/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common(CLI::App* cmd, palmod::CliOptions& opt) {
  cmd->add_option("--format", opt.format, "output format: text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  cmd->add_option("--out", opt.out, "write the structured result to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moduli of palindromic automorphisms: presentations, complexes, homology"};
  app.require_subcommand(1);

  palmod::CliOptions opt;

  auto* verify = app.add_subcommand("verify-presentation", "check relators, abelianization, and witness subgroups");
  verify->add_option("--n", opt.n, "free group rank")->required()->each([&](const std::string&) { opt.n_set = true; });
  verify->add_option("--p", opt.p, "prime for the witness subgroups (default 3)")
      ->each([&](const std::string&) { opt.p_set = true; });
  verify->add_option("--seed", opt.seed, "seed for the random product checks");
  add_common(verify, opt);

  auto* build = app.add_subcommand("build", "build a quotient complex and report its statistics");
  build->add_option("--family", opt.family, "sigma or p-sigma")->check(CLI::IsMember({"sigma", "p-sigma"}));
  build->add_option("--n", opt.n, "free group rank")->required()->each([&](const std::string&) { opt.n_set = true; });
  build->add_option("--p", opt.p, "odd prime (p-sigma family)")->each([&](const std::string&) { opt.p_set = true; });
  build->add_option("--max-rank", opt.max_rank, "largest allowed rank for the plain family (default 5)");
  add_common(build, opt);

  auto* hom = app.add_subcommand("homology", "homology of a built or loaded complex");
  hom->add_option("--in", opt.input, "complex file produced by build --out");
  hom->add_option("--family", opt.family, "sigma or p-sigma")->check(CLI::IsMember({"sigma", "p-sigma"}));
  hom->add_option("--n", opt.n, "free group rank")->each([&](const std::string&) { opt.n_set = true; });
  hom->add_option("--p", opt.p, "odd prime (p-sigma family)")->each([&](const std::string&) { opt.p_set = true; });
  hom->add_option("--coeff", opt.coeff, "coefficients: Z, Q, or Fp:<prime>");
  hom->add_option("--max-rank", opt.max_rank, "largest allowed rank for the plain family (default 5)");
  add_common(hom, opt);

  auto* farrell = app.add_subcommand("farrell", "periodic cohomology table of the normalizer");
  farrell->add_option("--p", opt.p, "odd prime")->required()->each([&](const std::string&) { opt.p_set = true; });
  farrell->add_option("--n", opt.n, "free group rank, p <= n <= 2p-1")
      ->required()
      ->each([&](const std::string&) { opt.n_set = true; });
  add_common(farrell, opt);

  auto* report = app.add_subcommand("report", "render a complex or report file");
  report->add_option("--in", opt.input, "file to render")->required();
  add_common(report, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return palmod::cmd_verify_presentation(opt, std::cout, std::cerr);
    if (build->parsed()) return palmod::cmd_build(opt, std::cout, std::cerr);
    if (hom->parsed()) return palmod::cmd_homology(opt, std::cout, std::cerr);
    if (farrell->parsed()) return palmod::cmd_farrell(opt, std::cout, std::cerr);
    if (report->parsed()) return palmod::cmd_report(opt, std::cout, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
