// Command-line front end: q-expansions, cycle decompositions, theta lifts,
// relation verification, real-quadratic invariants and the self-test suite.
//
// Exit codes: 0 success / verified, 1 failed verification or failed checks,
// 2 invalid input (one-line reason on stderr).

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eisenlift/eisenstein.hpp"
#include "eisenlift/realquad.hpp"
#include "eisenlift/selftest.hpp"
#include "eisenlift/thetalift.hpp"

namespace {

using namespace eisenlift;

struct Options {
  int N = 0;
  std::int64_t prec = 20;
  std::string matrix;
  std::string series;
  int k = 1;
  long long r = 0, p = 0, q = 0;
  std::string triple;
  std::string cusps;
  long long hecke_n = 1;
  std::string format = "text";
  std::string cache_dir;
  bool parallel = false;
  bool quad_with_series = false;
};

std::vector<long long> parse_ll_list(const std::string& s, size_t expect) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(std::stoll(part));
  if (expect != 0 && out.size() != expect)
    throw std::invalid_argument("expected " + std::to_string(expect) + " comma-separated values");
  return out;
}

std::vector<VertexPair> parse_vertices(const std::string& s) {
  std::vector<VertexPair> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part == "inf" || part == "oo") {
      out.push_back(VertexPair{1, 0});
      continue;
    }
    auto slash = part.find('/');
    if (slash == std::string::npos) {
      out.push_back(VertexPair{Int(part), 1});
    } else {
      out.push_back(VertexPair{Int(part.substr(0, slash)), Int(part.substr(slash + 1))});
    }
  }
  return out;
}

void apply_cache(const Options& opt) {
  if (!opt.cache_dir.empty()) {
    set_series_cache_dir(opt.cache_dir);
    return;
  }
  if (const char* env = std::getenv("EISENLIFT_CACHE")) {
    if (*env) set_series_cache_dir(env);
  }
}

void require_geometry_level(int N) {
  if (N < 4) throw std::invalid_argument("N must be >= 4");
}

int emit_series(const QSeries& s, const Options& opt) {
  if (opt.format == "json")
    std::cout << s.to_json() << "\n";
  else
    std::cout << s.to_text() << "\n";
  return 0;
}

int cmd_expand(const Options& opt) {
  if (opt.N < 1) throw std::invalid_argument("N must be >= 1");
  if (opt.prec < 1) throw std::invalid_argument("prec must be >= 1");
  const std::string& id = opt.series;
  std::int64_t num_prec = opt.prec * opt.N;  // prec counts integral q-powers
  QSeries s = [&] {
    if (id == "E") return expand_E(opt.k, opt.p, opt.q, opt.N, num_prec);
    if (id == "E2_00") return expand_E2_00(opt.N, num_prec);
    if (id == "Ehat") return expand_Ehat(opt.k, opt.p, opt.q, opt.N, num_prec);
    if (id == "G") return expand_G(opt.k, opt.r, opt.N, opt.prec);
    if (id == "Ghat2") return expand_Ghat2(opt.p, opt.N, opt.prec);
    if (id == "H") return expand_H(opt.p, opt.q, opt.N, opt.prec);
    if (id == "siegel") return siegel_log_deriv(opt.p, opt.q, opt.N, num_prec);
    throw std::invalid_argument("unknown series id: " + id);
  }();
  return emit_series(s, opt);
}

int cmd_decompose(const Options& opt) {
  require_geometry_level(opt.N);
  CycleDecomposition dec = decompose_cycle(MatZ::parse(opt.matrix), opt.N);
  if (opt.format == "json") {
    std::cout << dec.to_json() << "\n";
    return 0;
  }
  std::cout << (dec.kind == CycleKind::Parabolic ? "parabolic" : "hyperbolic") << "\n";
  for (const auto& cap : dec.caps)
    std::cout << "cap " << cap.cusp.str() << " gamma_r " << cap.gamma_r.str() << " coeff "
              << cap.coeff.str() << "\n";
  for (const auto& sym : dec.symbols)
    std::cout << "symbol " << sym.gamma.str() << " coeff " << sym.coeff.str() << "\n";
  return 0;
}

int cmd_lift(const Options& opt) {
  require_geometry_level(opt.N);
  if (opt.prec < 1) throw std::invalid_argument("prec must be >= 1");
  MatZ g = MatZ::parse(opt.matrix);
  QSeries s = lift_cycle(g, opt.N, opt.prec);
  if (opt.format == "json") {
    nlohmann::ordered_json j;
    j["series"] = nlohmann::ordered_json::parse(s.to_json());
    if (classify(g) != MatClass::Identity)
      j["decomposition"] = nlohmann::ordered_json::parse(decompose_cycle(g, opt.N).to_json());
    std::cout << j.dump() << "\n";
    return 0;
  }
  std::cout << s.to_text() << "\n";
  return 0;
}

int cmd_verify_triangle(const Options& opt) {
  require_geometry_level(opt.N);
  auto n = parse_ll_list(opt.triple, 3);
  RelationReport report = verify_triangle(opt.N, n[0], n[1], n[2], opt.prec);
  if (opt.format == "json")
    std::cout << report.to_json() << "\n";
  else
    std::cout << report.to_json() << "\n";
  return report.exit_code();
}

int cmd_verify_polygon(const Options& opt) {
  require_geometry_level(opt.N);
  RelationReport report = verify_polygon(opt.N, parse_vertices(opt.cusps), opt.prec);
  std::cout << report.to_json() << "\n";
  return report.exit_code();
}

int cmd_quad(const Options& opt) {
  require_geometry_level(opt.N);
  MatZ g = MatZ::parse(opt.matrix);
  if (opt.quad_with_series) {
    DiagonalRestriction d = diagonal_restriction(g, opt.N, opt.prec);
    if (opt.format == "json") {
      nlohmann::ordered_json j = nlohmann::ordered_json::parse(d.data.to_json());
      j["lift"] = nlohmann::ordered_json::parse(d.lift.to_json());
      j["diagonal_restriction"] = nlohmann::ordered_json::parse(d.diagonal.to_json());
      std::cout << j.dump() << "\n";
    } else {
      std::cout << d.data.to_json() << "\n";
      std::cout << "diagonal restriction: " << d.diagonal.to_text() << "\n";
    }
    return 0;
  }
  std::cout << quad_invariants(g, opt.N).to_json() << "\n";
  return 0;
}

int cmd_hecke(const Options& opt) {
  if (opt.N < 1) throw std::invalid_argument("N must be >= 1");
  auto reps = hecke_reps(opt.hecke_n, opt.N);
  if (opt.format == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& m : reps) j.push_back(m.str());
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& m : reps) std::cout << m.str() << "\n";
  }
  return 0;
}

int cmd_selftest(const Options& opt) {
  auto results = run_selftest(opt.parallel);
  int failures = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) std::cout << ": " << r.detail;
    std::cout << "\n";
    if (!r.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all checks passed" : std::to_string(failures) + " checks failed")
            << " (" << results.size() << " total)\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Eisenstein q-expansions, cycle decompositions and theta lifts"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool series_flags, bool matrix_flag) {
    sub->add_option("--N", opt.N, "level N");
    sub->add_option("--prec", opt.prec, "precision in integral q-powers");
    sub->add_option("--format", opt.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--cache-dir", opt.cache_dir, "on-disk series cache directory");
    if (series_flags) {
      sub->add_option("--series", opt.series, "E|E2_00|Ehat|G|Ghat2|H|siegel");
      sub->add_option("--k", opt.k, "weight (1 or 2)");
      sub->add_option("--r", opt.r, "index r");
      sub->add_option("--p", opt.p, "index p (or a)");
      sub->add_option("--q", opt.q, "index q (or b)");
    }
    if (matrix_flag) sub->add_option("--matrix", opt.matrix, "a,b,c,d row-major");
  };

  auto* expand = app.add_subcommand("expand", "q-expansion of a named series");
  add_common(expand, true, false);
  auto* decompose = app.add_subcommand("decompose", "cycle decomposition of a Gamma_1(N) matrix");
  add_common(decompose, false, true);
  auto* lift = app.add_subcommand("lift", "theta lift of a Gamma_1(N) cycle");
  add_common(lift, false, true);
  auto* vtri = app.add_subcommand("verify-triangle", "check a triangle relation");
  add_common(vtri, false, false);
  vtri->add_option("--n", opt.triple, "n1,n2,n3");
  auto* vpoly = app.add_subcommand("verify-polygon", "check a polygon relation");
  add_common(vpoly, false, false);
  vpoly->add_option("--cusps", opt.cusps, "comma list of m/n cusps");
  auto* quad = app.add_subcommand("quad", "real-quadratic invariants of a hyperbolic matrix");
  add_common(quad, false, true);
  auto* hecke = app.add_subcommand("hecke", "degree-n Hecke coset representatives");
  add_common(hecke, false, false);
  hecke->add_option("--n", opt.hecke_n, "degree n");
  auto* selftest = app.add_subcommand("selftest", "run the invariant suite");
  add_common(selftest, false, false);
  selftest->add_flag("--parallel", opt.parallel, "fan checks out across threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    apply_cache(opt);
    opt.quad_with_series = quad->parsed() && quad->count("--prec") > 0;
    if (expand->parsed()) return cmd_expand(opt);
    if (decompose->parsed()) return cmd_decompose(opt);
    if (lift->parsed()) return cmd_lift(opt);
    if (vtri->parsed()) return cmd_verify_triangle(opt);
    if (vpoly->parsed()) return cmd_verify_polygon(opt);
    if (quad->parsed()) return cmd_quad(opt);
    if (hecke->parsed()) return cmd_hecke(opt);
    if (selftest->parsed()) return cmd_selftest(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}
