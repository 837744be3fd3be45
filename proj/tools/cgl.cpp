#include <cstdlib>
#include <iostream>
#include <memory>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include <cgl/cli.hpp>

namespace {

// Collects string-valued flags so commands see only the ones actually given.
struct SubArgs {
  CLI::App* cmd = nullptr;
  std::vector<std::tuple<std::string, std::shared_ptr<std::string>, CLI::Option*>> opts;

  void add(const std::string& key, const std::string& help) {
    auto store = std::make_shared<std::string>();
    CLI::Option* o = cmd->add_option("--" + key, *store, help);
    opts.emplace_back(key, store, o);
  }

  cgl::Params params() const {
    cgl::Params p;
    for (const auto& [k, s, o] : opts)
      if (o->count() > 0) p[k] = *s;
    return p;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cayley graph variants: builders, spectra, certificates, analyses"};
  app.require_subcommand(0, 1);

  std::string config_path;
  int workers = 0;
  bool deterministic = false;
  app.add_option("--config", config_path, "JSON run configuration file");
  app.add_option("--workers", workers, "cap on parallel workers");
  app.add_flag("--deterministic", deterministic, "pin one worker for byte-stable output");

  std::vector<SubArgs> subs(5);
  subs[0].cmd = app.add_subcommand("build", "construct a graph and write it as JSON");
  subs[0].add("family", "family string, e.g. cayley:group=cyclic:8,set=1;7");
  subs[0].add("out", "output path (default: stdout)");

  subs[1].cmd = app.add_subcommand("spectrum", "exact adjacency spectrum as CSV");
  subs[1].add("family", "family string to build");
  subs[1].add("graph", "previously written graph JSON file");
  subs[1].add("out", "output path (default: stdout)");

  subs[2].cmd = app.add_subcommand("certify", "machine-checkable spectral certificates");
  subs[2].add("kind", "ramanujan | pairing | h-isospectral | dichotomy");
  subs[2].add("family", "family string (ramanujan)");
  subs[2].add("group", "group spec, e.g. sym:4");
  subs[2].add("set", "connection multiset, e.g. 1;7 or class:(1,2)");
  subs[2].add("sigma", "twist: id | neg | conj:<elem> | conjmat:<mat> | frobenius");
  subs[2].add("i", "first variant index 1..4 (pairing)");
  subs[2].add("j", "second variant index 1..4 (pairing)");
  subs[2].add("gg-n", "grid size for the torus family (h-isospectral)");
  subs[2].add("klein", "klein four-group index 1..3 (h-isospectral)");
  subs[2].add("out", "output path (default: stdout)");

  subs[3].cmd = app.add_subcommand("analyze", "diameters, expansion, loops, invariants");
  subs[3].add("kind",
              "diameter | cheeger | loops | walks | fingerprint | gssigma | uniformity");
  subs[3].add("family", "family string");
  subs[3].add("family-j", "second family string (diameter relation, fingerprint)");
  subs[3].add("group", "group spec (gssigma)");
  subs[3].add("set", "connection multiset (gssigma)");
  subs[3].add("sigma", "twist (gssigma)");
  subs[3].add("length", "closed-walk length 1..4 (walks)");
  subs[3].add("fam", "sym | alt (uniformity)");
  subs[3].add("k", "number of commuting conjugations (uniformity)");
  subs[3].add("n-lo", "smallest degree (uniformity)");
  subs[3].add("n-hi", "largest degree (uniformity)");
  subs[3].add("out", "output path (default: stdout)");

  subs[4].cmd = app.add_subcommand("sweep", "run a manifest of jobs and summarize");
  subs[4].add("manifest", "JSON manifest: {jobs: [{command, ..., expected?}]}");
  subs[4].add("out", "summary path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }

  cgl::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = cgl::load_config(config_path);
    if (workers > 0) cfg.workers = workers;
    if (deterministic) cfg.deterministic = true;
    cfg.validate();
    if (cfg.dense_cap != cgl::RunConfig().dense_cap)
      setenv("CGL_MAX_DENSE_N", std::to_string(cfg.dense_cap).c_str(), 1);
  } catch (const cgl::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  CLI::App* picked = app.get_subcommands().front();
  for (const SubArgs& s : subs)
    if (s.cmd == picked)
      return cgl::run_protected(picked->get_name(), s.params(), cfg, std::cout, std::cerr);
  return 2;
}
