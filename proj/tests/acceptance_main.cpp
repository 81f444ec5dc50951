// End-to-end acceptance checks.  Prints one PASS/FAIL line per criterion and
// exits nonzero if any fail.
//
//   rootbound_acceptance --cli <path-to-rootbound-binary>
//
// Criteria 1 and 10 exercise the CLI binary through subprocesses; the rest
// drive the library directly against independent oracles.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "rootbound/json_io.hpp"
#include "rootbound/rootbound.hpp"
#include "support/oracles.hpp"

using namespace rootbound;
namespace ts = testsupport;
namespace fs = std::filesystem;

namespace {

struct failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw failure(msg);
}

struct Ctx {
  std::string cli;
  fs::path dir;
};

struct CmdResult {
  int status = -1;
  std::string out;
};

CmdResult run_cli(const Ctx& ctx, const std::string& args) {
  const std::string cmd = ctx.cli + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw failure("popen failed for: " + cmd);
  CmdResult res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int rc = pclose(pipe);
  res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return res;
}

std::string write_poly(const Ctx& ctx, const std::string& name, const Polynomial& f) {
  const fs::path p = ctx.dir / name;
  std::ofstream out(p);
  out << to_json(f).dump() << "\n";
  return p.string();
}

Polynomial make(std::initializer_list<Scalar> ascending) {
  return Polynomial(std::vector<Scalar>(ascending));
}

struct CorpusEntry {
  Polynomial f;
  Real eps;
};

// degree 2..6, root moduli <= 2, distinct-root separation >= 0.2, every
// fifth polynomial carrying a double root; eps = 0.4 * (separation / 2)
std::vector<CorpusEntry> theorem_corpus(std::uint64_t seed) {
  std::mt19937_64 rng = rng_stream(seed, 0);
  std::vector<CorpusEntry> out;
  while (out.size() < 50) {
    const int distinct = 2 + static_cast<int>(rng() % 4);
    const auto centers = ts::random_separated_points(rng, distinct, 2.0, 0.2);
    std::vector<Scalar> roots(centers.begin(), centers.end());
    if (out.size() % 5 == 0 && roots.size() < 6) roots.push_back(centers[0]);
    Real sep = std::numeric_limits<Real>::infinity();
    for (std::size_t i = 0; i < centers.size(); ++i)
      for (std::size_t j = i + 1; j < centers.size(); ++j)
        sep = std::min(sep, std::abs(centers[i] - centers[j]));
    const Scalar lead =
        std::polar(uniform_range(rng, 0.5, 2.0), kTwoPi * uniform_unit(rng));
    out.push_back({Polynomial::from_roots(lead, roots), 0.2 * sep});
  }
  return out;
}

// double roots split their found pair by ~sqrt of the backward error, so
// the corpus runs cluster at 1e-4 instead of the 1e-6 default
constexpr Real kCorpusClusterTol = 1e-4;

void criterion_1_formula_reproduction(const Ctx& ctx) {
  const auto zsq = write_poly(ctx, "zsq.json", make({{0, 0}, {0, 0}, {1, 0}}));
  const auto r1 = run_cli(ctx, "bound " + zsq + " --epsilon 0.5 --method zero-root");
  require(r1.status == 0, "bound zero-root exited " + std::to_string(r1.status));
  const json j1 = json::parse(r1.out);
  require(j1.at("delta_sup").get<Real>() == 0.0625,
          "zero-root delta_sup != 0.0625 exactly: " + j1.at("delta_sup").dump());

  const auto zsqm1 = write_poly(ctx, "zsqm1.json", make({{-1, 0}, {0, 0}, {1, 0}}));
  const auto r2 = run_cli(ctx, "bound " + zsqm1 + " --epsilon 0.1 --method all-roots");
  require(r2.status == 0, "bound all-roots exited " + std::to_string(r2.status));
  const Real got = json::parse(r2.out).at("delta_sup").get<Real>();
  const Real want = 1.0 / 600.0;
  require(std::abs(got - want) <= 1e-15 * want,
          "all-roots delta_sup off by " + std::to_string(std::abs(got - want) / want) +
              " relative");
}

void criterion_2_zero_root_soundness(const Ctx&) {
  std::mt19937_64 rng = rng_stream(7002, 0);
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + static_cast<int>(rng() % 8);
    std::vector<Scalar> coeffs(static_cast<std::size_t>(n) + 1, Scalar(0));
    coeffs.back() = std::polar(uniform_range(rng, 0.1, 10.0),
                               kTwoPi * uniform_unit(rng));
    const Polynomial f{coeffs};
    for (const Real eps : {0.2, 0.5, 0.9}) {
      const auto rep = fuzz_theorem(f, eps, TheoremKind::zero_root, 1000,
                                    static_cast<std::uint64_t>(1000 + i), 0.9);
      require(rep.violations == 0,
              "monomial " + std::to_string(i) + " eps " + std::to_string(eps) +
                  ": " + std::to_string(rep.violations) + " violations");
    }
  }
}

void criterion_3_all_roots_soundness(const Ctx&) {
  const auto corpus = theorem_corpus(7003);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto rep =
        fuzz_theorem(corpus[i].f, corpus[i].eps, TheoremKind::all_roots, 1000,
                     2000 + i, 0.9, {}, kCorpusClusterTol);
    require(rep.violations == 0, "poly " + std::to_string(i) + ": " +
                                     std::to_string(rep.violations) + " violations");
    require(rep.worst_margin > 0, "poly " + std::to_string(i) + ": margin <= 0");
  }
}

void criterion_4_aligned_soundness(const Ctx&) {
  const auto corpus = theorem_corpus(7003);  // same corpus as criterion 3
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Polynomial& f = corpus[i].f;
    const auto rep = fuzz_theorem(f, corpus[i].eps, TheoremKind::aligned, 1000,
                                  3000 + i, 0.9, {}, kCorpusClusterTol);
    require(rep.violations == 0, "poly " + std::to_string(i) + ": " +
                                     std::to_string(rep.violations) + " violations");
    const auto cert = delta_aligned(f, corpus[i].eps, {}, kCorpusClusterTol);
    // every sampled root is nonzero, so levels == degree
    require(static_cast<int>(cert.trace.size()) == f.degree(),
            "poly " + std::to_string(i) + ": trace depth " +
                std::to_string(cert.trace.size()) + " != degree " +
                std::to_string(f.degree()));
  }
}

void criterion_5_deflation(const Ctx&) {
  std::mt19937_64 rng = rng_stream(7005, 0);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + static_cast<int>(rng() % 10);
    std::vector<Scalar> roots;
    roots.push_back(ts::random_annulus(rng, 0.1, 2.0));
    for (int i = 1; i < n; ++i) roots.push_back(uniform_disc(rng, 2.0));
    const Polynomial f = Polynomial::from_roots({1, 0}, roots);

    // round trip at an arbitrary root of modulus >= 0.1
    const auto back = ts::multiply_by_linear(deflate(f, roots[0]).coeffs(), roots[0]);
    require(ts::max_coeff_distance(back, f.coeffs()) <= 1e-9 * f.max_abs_coeff(),
            "round trip beyond 1e-9 at draw " + std::to_string(t));

    // route agreement at the largest-modulus root, where both the division
    // and the closed-form sum are well conditioned
    std::size_t big = 0;
    for (std::size_t i = 1; i < roots.size(); ++i)
      if (std::abs(roots[i]) > std::abs(roots[big])) big = i;
    const Polynomial fhat = deflate(f, roots[big]);
    const auto closed = ts::closed_form_deflation(f.coeffs(), roots[big]);
    require(ts::max_coeff_distance(fhat.coeffs(), closed) <=
                1e-12 * ts::max_abs(closed),
            "recurrence vs closed form beyond 1e-12 at draw " + std::to_string(t));
  }
}

void criterion_6_deflation_box(const Ctx&) {
  std::mt19937_64 rng = rng_stream(7006, 0);
  const Real lambdas[] = {0.02, 0.1, 0.7};
  for (int inst = 0; inst < 20; ++inst) {
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<Scalar> roots;
    roots.push_back(ts::random_annulus(rng, 0.15, 2.0));
    for (int i = 1; i < n; ++i) roots.push_back(uniform_disc(rng, 2.0));
    const Polynomial f = Polynomial::from_roots(
        std::polar(uniform_range(rng, 0.5, 2.0), kTwoPi * uniform_unit(rng)), roots);
    const Scalar zeta = roots[0];
    const Real lambda = lambdas[inst % 3];
    const Real kappa = kappa_deflation(f, zeta, lambda);
    require(kappa > 0 && kappa <= 0.5 * std::abs(zeta), "kappa out of range");

    const auto base = ts::closed_form_deflation(f.coeffs(), zeta);
    for (int t = 0; t < 10000; ++t) {
      std::vector<Scalar> u = f.coeffs();
      for (Scalar& c : u) c += uniform_open_disc(rng, kappa);
      const Scalar v = zeta + uniform_open_disc(rng, kappa);
      const auto moved = ts::closed_form_deflation(u, v);
      for (std::size_t i = 0; i < moved.size(); ++i)
        require(std::abs(moved[i] - base[i]) < lambda,
                "instance " + std::to_string(inst) + " trial " + std::to_string(t) +
                    ": deflated coefficient moved by " +
                    std::to_string(std::abs(moved[i] - base[i])) + " >= lambda " +
                    std::to_string(lambda));
    }
  }
}

void criterion_7_inverse(const Ctx&) {
  std::mt19937_64 rng = rng_stream(7007, 0);
  for (int inst = 0; inst < 20; ++inst) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const auto roots = ts::random_separated_points(rng, n, 2.0, 0.1);
    const Polynomial f = Polynomial::from_roots(
        std::polar(uniform_range(rng, 0.5, 2.0), kTwoPi * uniform_unit(rng)), roots);
    for (const Real delta : {0.05, 0.1}) {
      const Real eps = epsilon_inverse(f, delta).epsilon;
      require(eps > 0, "nonpositive eps");
      for (int t = 0; t < 10000; ++t) {
        std::vector<Scalar> moved = roots;
        for (Scalar& r : moved) r += uniform_open_disc(rng, eps);
        const Scalar lead = f.leading() * std::polar(uniform_range(rng, 0.5, 2.0),
                                                     kTwoPi * uniform_unit(rng));
        const Polynomial g = Polynomial::from_roots(lead, moved);
        Real dev = 0;
        for (std::size_t i = 0; i < g.coeffs().size(); ++i)
          dev = std::max(dev, std::abs(g.coeffs()[i] / g.leading() -
                                       f.coeffs()[i] / f.leading()));
        require(dev < delta, "instance " + std::to_string(inst) + " delta " +
                                 std::to_string(delta) + ": monic deviation " +
                                 std::to_string(dev));
      }
    }
  }
}

void criterion_8_matching_oracle(const Ctx&) {
  std::mt19937_64 rng = rng_stream(7008, 0);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + static_cast<int>(rng() % 7);
    RootSequence a, b;
    for (int i = 0; i < n; ++i) {
      a.push_back(ts::random_in_box(rng, 2));
      b.push_back(ts::random_in_box(rng, 2));
    }
    const auto [perm, got] = bottleneck_match(a, b);
    const Real want = ts::brute_bottleneck(a, b);
    require(got == want, "instance " + std::to_string(t) + ": got " +
                             std::to_string(got) + " want " + std::to_string(want));
    (void)perm;
  }
}

void criterion_9_disjoint_balls(const Ctx&) {
  std::mt19937_64 rng = rng_stream(7009, 0);
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(rng() % 5);
    std::vector<Scalar> centers;
    for (int i = 0; i < n; ++i) centers.push_back(ts::random_in_box(rng, 2));
    Real sep = std::numeric_limits<Real>::infinity();
    for (std::size_t i = 0; i < centers.size(); ++i)
      for (std::size_t j = i + 1; j < centers.size(); ++j)
        sep = std::min(sep, std::abs(centers[i] - centers[j]));
    if (sep == 0.0) continue;

    // eps = separation/2: no segment sample lies in both balls of any pair
    const Real eps_ok = 0.5 * sep;
    for (std::size_t i = 0; i < centers.size(); ++i)
      for (std::size_t j = i + 1; j < centers.size(); ++j)
        for (int s = 0; s < 100; ++s) {
          const Real frac = (s + 0.5) / 100.0;  // grid avoids the exact midpoint
          const Scalar z = centers[i] + frac * (centers[j] - centers[i]);
          require(!(std::abs(z - centers[i]) < eps_ok &&
                    std::abs(z - centers[j]) < eps_ok),
                  "set " + std::to_string(t) + ": common member at eps = sep/2");
        }

    // eps = 0.75 * separation: the closest pair overlaps
    const Real eps_big = 0.75 * sep;
    bool overlap = false;
    for (std::size_t i = 0; i < centers.size() && !overlap; ++i)
      for (std::size_t j = i + 1; j < centers.size() && !overlap; ++j)
        for (int s = 0; s < 100 && !overlap; ++s) {
          const Real frac = (s + 0.5) / 100.0;
          const Scalar z = centers[i] + frac * (centers[j] - centers[i]);
          overlap = std::abs(z - centers[i]) < eps_big &&
                    std::abs(z - centers[j]) < eps_big;
        }
    require(overlap, "set " + std::to_string(t) + ": no overlap at eps = 0.75 sep");
  }
}

void criterion_10_determinism(const Ctx& ctx) {
  const auto cubic = write_poly(
      ctx, "cubic.json",
      Polynomial::from_roots({1, 0}, std::vector<Scalar>{{1, 0}, {2, 0}, {0, 1.5}}));
  const auto zsqm1 = write_poly(ctx, "det_zsqm1.json", make({{-1, 0}, {0, 0}, {1, 0}}));
  const auto lin = write_poly(ctx, "det_lin.json", make({{-1, 0}, {1, 0}}));

  const std::vector<std::pair<std::string, int>> cases = {
      {"roots " + cubic + " --seed 42", 0},
      {"separation " + cubic, 0},
      {"deflate " + cubic + " --zeta 1,0", 0},
      {"bound " + zsqm1 + " --epsilon 0.1 --method aligned", 0},
      {"inverse " + zsqm1 + " --delta 0.1", 0},
      {"align " + zsqm1 + " " + zsqm1 + " --epsilon 0.01", 0},
      {"fuzz " + zsqm1 + " --epsilon 0.1 --theorem aligned --trials 100 --seed 9", 0},
      {"estimate " + lin + " --epsilon 0.1 --trials 40 --seed 3", 0},
  };
  for (const auto& [args, want_status] : cases) {
    const CmdResult a = run_cli(ctx, args);
    const CmdResult b = run_cli(ctx, args);
    require(a.status == want_status, "'" + args + "' exited " +
                                         std::to_string(a.status) + ", expected " +
                                         std::to_string(want_status));
    require(a.status == b.status, "'" + args + "' exit status not reproducible");
    require(!a.out.empty(), "'" + args + "' produced no output");
    require(a.out == b.out, "'" + args + "' output not byte-identical");
  }
}

}  // namespace

int main(int argc, char** argv) {
  Ctx ctx;
  ctx.cli = "rootbound";
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") ctx.cli = argv[i + 1];
  ctx.dir = fs::temp_directory_path() /
            ("rootbound-acceptance-" + std::to_string(getpid()));
  fs::create_directories(ctx.dir);

  const std::vector<std::pair<std::string, std::function<void(const Ctx&)>>> criteria = {
      {"formula reproduction through the CLI", criterion_1_formula_reproduction},
      {"zero-root bound soundness (150 fuzz campaigns)", criterion_2_zero_root_soundness},
      {"all-roots bound soundness (50 fuzz campaigns)", criterion_3_all_roots_soundness},
      {"alignment bound soundness and trace depth", criterion_4_aligned_soundness},
      {"deflation round-trip and closed-form agreement", criterion_5_deflation},
      {"deflation continuity box (20 x 10^4 samples)", criterion_6_deflation_box},
      {"inverse bound soundness (20 x 2 x 10^4 samples)", criterion_7_inverse},
      {"bottleneck matching equals exhaustive optimum", criterion_8_matching_oracle},
      {"ball disjointness at half/three-quarter separation", criterion_9_disjoint_balls},
      {"byte-identical CLI output under fixed seeds", criterion_10_determinism},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string verdict = "PASS", detail;
    try {
      criteria[i].second(ctx);
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = std::string(" — ") + e.what();
      ++failed;
    }
    std::printf("[%s] criterion %zu: %s%s\n", verdict.c_str(), i + 1,
                criteria[i].first.c_str(), detail.c_str());
    std::fflush(stdout);
  }

  std::error_code ec;
  fs::remove_all(ctx.dir, ec);

  if (failed == 0)
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  else
    std::printf("%d of %zu acceptance criteria FAILED\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
