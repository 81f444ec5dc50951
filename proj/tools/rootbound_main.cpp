// Command-line front end: every subcommand reads polynomials as
// {"coeffs": [[re, im], ...]} (a file path, or "-" for stdin) and writes a
// JSON result to stdout.  Exit codes: 0 success / aligned / zero violations,
// 1 negative result, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rootbound/json_io.hpp"
#include "rootbound/rootbound.hpp"

namespace {

using rootbound::json;
using rootbound::Polynomial;
using rootbound::Real;
using rootbound::RootOptions;
using rootbound::Scalar;

Polynomial read_polynomial(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  return rootbound::polynomial_from_json(json::parse(text));
}

Scalar parse_scalar_arg(const std::string& text) {
  // "RE,IM", or just "RE" for a real value
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse complex value '" + text + "'");
  }
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"explicit perturbation bounds and alignment checks for polynomial roots"};
  app.require_subcommand(1);

  std::string poly_path, other_path, zeta_text, method, theorem;
  Real tol = 1e-12, cluster_tol = 1e-6, epsilon = 0, delta = 0, slack = 0,
       safety = 0.9;
  int max_iter = 200;
  std::uint64_t seed = 0, trials = 0;

  auto* roots_cmd = app.add_subcommand("roots", "all roots of a polynomial");
  roots_cmd->add_option("poly", poly_path)->required();
  roots_cmd->add_option("--tol", tol);
  roots_cmd->add_option("--max-iter", max_iter);
  roots_cmd->add_option("--seed", seed);

  auto* deflate_cmd = app.add_subcommand("deflate", "divide by (z - zeta)");
  deflate_cmd->add_option("poly", poly_path)->required();
  deflate_cmd->add_option("--zeta", zeta_text)->required();

  auto* sep_cmd = app.add_subcommand("separation", "distinct roots and their separation");
  sep_cmd->add_option("poly", poly_path)->required();
  sep_cmd->add_option("--cluster-tol", cluster_tol);

  auto* bound_cmd = app.add_subcommand("bound", "certified delta for a given epsilon");
  bound_cmd->add_option("poly", poly_path)->required();
  bound_cmd->add_option("--epsilon", epsilon)->required();
  bound_cmd->add_option("--method", method)
      ->required()
      ->check(CLI::IsMember({"zero-root", "all-roots", "aligned"}));

  auto* inverse_cmd = app.add_subcommand("inverse", "certified epsilon for a given delta");
  inverse_cmd->add_option("poly", poly_path)->required();
  inverse_cmd->add_option("--delta", delta)->required();

  auto* align_cmd = app.add_subcommand("align", "is g epsilon-aligned to f");
  align_cmd->add_option("f", poly_path)->required();
  align_cmd->add_option("g", other_path)->required();
  align_cmd->add_option("--epsilon", epsilon)->required();
  align_cmd->add_option("--slack", slack);

  auto* fuzz_cmd = app.add_subcommand("fuzz", "sample deformations against a certified bound");
  fuzz_cmd->add_option("poly", poly_path)->required();
  fuzz_cmd->add_option("--epsilon", epsilon)->required();
  fuzz_cmd->add_option("--theorem", theorem)
      ->required()
      ->check(CLI::IsMember({"zero-root", "all-roots", "aligned", "inverse"}));
  fuzz_cmd->add_option("--trials", trials)->required();
  fuzz_cmd->add_option("--seed", seed)->required();
  fuzz_cmd->add_option("--safety", safety);

  auto* estimate_cmd = app.add_subcommand("estimate", "empirical delta threshold by bisection");
  estimate_cmd->add_option("poly", poly_path)->required();
  estimate_cmd->add_option("--epsilon", epsilon)->required();
  estimate_cmd->add_option("--trials", trials)->required();
  estimate_cmd->add_option("--seed", seed)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const RootOptions opts{max_iter, tol, seed};

    if (roots_cmd->parsed()) {
      print(rootbound::to_json(rootbound::find_roots(read_polynomial(poly_path), opts)));
      return 0;
    }
    if (deflate_cmd->parsed()) {
      print(rootbound::to_json(
          rootbound::deflate(read_polynomial(poly_path), parse_scalar_arg(zeta_text))));
      return 0;
    }
    if (sep_cmd->parsed()) {
      const auto rc =
          rootbound::cluster_roots(rootbound::find_roots(read_polynomial(poly_path), opts), cluster_tol);
      json out{{"clusters", rootbound::to_json(rc)}};
      if (rc.clusters.size() >= 2) {
        const Real sep = rootbound::separation(rc);
        out["separation"] = sep;
        out["epsilon_max"] = 0.5 * sep;
      } else {
        // a single distinct root: disjointness holds for every radius
        out["separation"] = "inf";
        out["epsilon_max"] = "inf";
      }
      print(out);
      return 0;
    }
    if (bound_cmd->parsed()) {
      const Polynomial f = read_polynomial(poly_path);
      rootbound::DeltaCertificate cert;
      if (method == "zero-root")
        cert = rootbound::delta_zero_root(f, epsilon);
      else if (method == "all-roots")
        cert = rootbound::delta_all_roots(f, epsilon, opts, cluster_tol);
      else
        cert = rootbound::delta_aligned(f, epsilon, opts, cluster_tol);
      print(rootbound::to_json(cert));
      return 0;
    }
    if (inverse_cmd->parsed()) {
      print(rootbound::to_json(
          rootbound::epsilon_inverse(read_polynomial(poly_path), delta, opts, cluster_tol)));
      return 0;
    }
    if (align_cmd->parsed()) {
      const Polynomial f = read_polynomial(poly_path);
      const Polynomial g = read_polynomial(other_path);
      const auto fc = rootbound::cluster_roots(rootbound::find_roots(f, opts), cluster_tol);
      const auto rep =
          rootbound::is_epsilon_aligned(fc, rootbound::find_roots(g, opts), epsilon, slack);
      print(rootbound::to_json(rep));
      return rep.aligned ? 0 : 1;
    }
    if (fuzz_cmd->parsed()) {
      rootbound::TheoremKind kind = rootbound::TheoremKind::aligned;
      if (theorem == "zero-root") kind = rootbound::TheoremKind::zero_root;
      else if (theorem == "all-roots") kind = rootbound::TheoremKind::all_roots;
      else if (theorem == "inverse") kind = rootbound::TheoremKind::inverse;
      const auto rep = rootbound::fuzz_theorem(read_polynomial(poly_path), epsilon, kind,
                                               trials, seed, safety, opts, cluster_tol);
      print(rootbound::to_json(rep));
      return rep.violations == 0 ? 0 : 1;
    }
    if (estimate_cmd->parsed()) {
      print(rootbound::to_json(rootbound::estimate_empirical_delta(
          read_polynomial(poly_path), epsilon, trials, seed, opts, cluster_tol)));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
