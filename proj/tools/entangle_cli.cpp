// Command-line front end over the C API.
//
// Exit codes: 0 success, 1 a verification check failed, 2 invalid input or
// construction error, 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "entangle/entangle.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConstruction = 2;
constexpr int kExitIo = 3;

int exit_code(ent_status s) {
  if (s == ENT_OK) return kExitOk;
  return s == ENT_ERR_IO ? kExitIo : kExitConstruction;
}

int report_error(ent_status s) {
  std::cerr << "entangle: " << ent_status_name(s) << ": " << ent_last_error() << "\n";
  return exit_code(s);
}

struct Pipeline {
  ent_pipeline* handle = nullptr;
  ~Pipeline() { ent_pipeline_free(handle); }
};

struct OwnedString {
  char* text = nullptr;
  ~OwnedString() { ent_string_free(text); }
};

bool write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "entangle: cannot write " << path << "\n";
    return false;
  }
  return true;
}

struct Config {
  std::int64_t n = 20;
  std::uint64_t seed = 0;
  std::string out = ".";
  std::string formats = "json";
};

void add_common(CLI::App* cmd, Config& c, bool with_seed) {
  cmd->add_option("--n", c.n, "Box parameter; the box is (2n+1) x n x n, n >= 20")->required();
  if (with_seed) cmd->add_option("--seed", c.seed, "Seed for the tree extension and all sampling")->capture_default_str();
  cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
}

int cmd_generate(const Config& c) {
  const auto s = ent_generate(c.n, c.out.c_str(), c.formats.c_str());
  if (s != ENT_OK) return report_error(s);
  ent_complex_counts k{};
  ent_cuboid_counts(2 * c.n + 1, c.n, c.n, &k);
  std::cout << "box (" << 2 * c.n + 1 << "," << c.n << "," << c.n << "): " << k.vertices << " vertices, " << k.edges
            << " edges, " << k.faces << " faces -> " << c.out << "\n";
  return kExitOk;
}

int build(const Config& c, Pipeline& p) {
  const auto s = ent_pipeline_build(c.n, c.seed, &p.handle);
  return s == ENT_OK ? kExitOk : report_error(s);
}

int cmd_build(const Config& c) {
  Pipeline p;
  if (int rc = build(c, p)) return rc;
  if (auto s = ent_pipeline_write(p.handle, c.out.c_str(), c.formats.c_str()); s != ENT_OK) return report_error(s);
  ent_pipeline_counts k{};
  ent_pipeline_get_counts(p.handle, &k);
  std::cout << "n=" << c.n << " seed=" << c.seed << ": T' has " << k.tree_edges << " edges, " << k.non_tree_edges
            << " non-tree edges; C' " << k.cprime.vertices << "/" << k.cprime.edges << "/" << k.cprime.faces
            << ", C'' " << k.cdoubleprime.vertices << "/" << k.cdoubleprime.edges << "/" << k.cdoubleprime.faces
            << " -> " << c.out << "\n";
  return kExitOk;
}

struct VerifyConfig {
  std::string scope;
  std::string checks;
  std::size_t knot_samples = 100;
  std::size_t contraction_samples = 10;
  std::size_t lemma_trials = 1000;
  bool inject_negative = false;
  bool serial = false;
};

int cmd_verify(const Config& c, const VerifyConfig& v) {
  Pipeline p;
  if (int rc = build(c, p)) return rc;
  ent_verify_options o;
  ent_verify_options_init(&o);
  o.scope = v.scope.empty() ? nullptr : v.scope.c_str();
  o.sample_seed = c.seed;
  o.knot_samples = v.knot_samples;
  o.contraction_samples = v.contraction_samples;
  o.lemma_trials = v.lemma_trials;
  o.inject_negative = v.inject_negative ? 1 : 0;
  o.checks = v.checks.empty() ? nullptr : v.checks.c_str();
  o.parallel = v.serial ? 0 : 1;
  OwnedString report;
  int passed = 0;
  if (auto s = ent_pipeline_verify(p.handle, &o, &report.text, &passed); s != ENT_OK) return report_error(s);
  const auto path = std::filesystem::path(c.out) / "report.json";
  if (!write_file(path, report.text)) return kExitIo;
  const auto j = nlohmann::ordered_json::parse(report.text);
  for (const auto& r : j["checks"]) {
    std::printf("%s  %-52s %-24s %8.2fs\n", r["passed"].get<bool>() ? "PASS" : "FAIL",
                r["name"].get<std::string>().c_str(), r["scope"].get<std::string>().c_str(),
                r["seconds"].get<double>());
    if (!r["passed"].get<bool>()) std::printf("      counterexample: %.400s\n", r["counterexample"].dump().c_str());
  }
  std::size_t injected = 0, detected = 0;
  for (const auto& r : j["checks"])
    if (r["name"].get<std::string>().rfind("injected/", 0) == 0) {
      ++injected;
      detected += !r["passed"].get<bool>();
    }
  if (injected)
    std::cout << "injected corruptions detected: " << detected << "/" << injected
              << (detected == injected ? "" : " (UNDETECTED corruption)") << "\n";
  std::cout << (passed ? "all checks passed" : "some checks FAILED") << "; report: " << path.string() << "\n";
  return passed ? kExitOk : kExitCheckFailed;
}

int cmd_knot(const Config& c, std::uint32_t edge, const std::vector<std::uint32_t>& primes, bool write) {
  Pipeline p;
  if (int rc = build(c, p)) return rc;
  OwnedString cert;
  if (auto s = ent_pipeline_knot(p.handle, edge, primes.data(), primes.size(), &cert.text); s != ENT_OK)
    return report_error(s);
  std::cout << cert.text;
  if (write && !write_file(std::filesystem::path(c.out) / ("knot_" + std::to_string(edge) + ".json"), cert.text))
    return kExitIo;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entangled spanning trees of cuboid complexes: build, verify, export."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ent_version()));

  Config gen, bld, ver, knt;
  auto* g = app.add_subcommand("generate", "Write the box complex, its colouring and coordinates");
  add_common(g, gen, false);
  g->add_option("--format", gen.formats, "Comma-separated subset of off,obj,dot,json")->capture_default_str();

  auto* b = app.add_subcommand("build", "Build spine, T', C' and C'' and write them");
  add_common(b, bld, true);
  b->add_option("--format", bld.formats, "Extra exports besides the JSON files: off,obj,dot,json")
      ->capture_default_str();

  VerifyConfig vc;
  auto* v = app.add_subcommand("verify", "Run the verification checks and write report.json");
  add_common(v, ver, true);
  v->add_option("--scope", vc.scope, "full or sampled:K for every check (default: routing full, others sampled)")
      ->check([](const std::string& s) {
        if (s == "full") return std::string();
        const std::string prefix = "sampled:";
        if (s.rfind(prefix, 0) == 0 && s.size() > prefix.size() &&
            s.find_first_not_of("0123456789", prefix.size()) == std::string::npos)
          return std::string();
        return std::string("expected full or sampled:K");
      });
  v->add_option("--checks", vc.checks, "Comma-separated subset of tree,routing,knots,g14,contraction,cpp,lemmas");
  v->add_option("--knot-samples", vc.knot_samples, "Default sample size of the knot check")->capture_default_str();
  v->add_option("--contraction-samples", vc.contraction_samples, "Default sample size of the contraction checks")
      ->capture_default_str();
  v->add_option("--lemma-trials", vc.lemma_trials, "Random forests for the small-box lemma")->capture_default_str();
  v->add_flag("--inject-negative", vc.inject_negative, "Also run every check on a corrupted input");
  v->add_flag("--serial", vc.serial, "Run checks one after another");

  std::uint32_t edge = 0;
  std::vector<std::uint32_t> primes = {3};
  bool write_cert = false;
  auto* k = app.add_subcommand("knot", "Certify the fundamental cycle of one non-tree edge of C'");
  add_common(k, knt, true);
  k->add_option("--edge", edge, "Edge id in C'")->required();
  k->add_option("--p", primes, "Odd prime moduli for Fox colourings, comma-separated")
      ->delimiter(',')
      ->capture_default_str();
  k->add_flag("--write", write_cert, "Also write knot_<edge>.json to --out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConstruction;
  }

  if (g->parsed()) return cmd_generate(gen);
  if (b->parsed()) return cmd_build(bld);
  if (v->parsed()) return cmd_verify(ver, vc);
  return cmd_knot(knt, edge, primes, write_cert);
}
