#include <iostream>

#include <CLI11.hpp>

#include "lipsmooth/corpus.hpp"
#include "lipsmooth/errors.hpp"
#include "lipsmooth/run_config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"lipsmooth: Lipschitz-preserving smoothing with certified error bounds"};

  std::string config_path;
  std::string out_override;
  bool strict = false;
  bool list_corpus = false;
  app.add_option("--config", config_path, "run configuration file (flat key = value text)");
  app.add_option("--out", out_override, "output directory (overrides the config)");
  app.add_flag("--strict", strict, "treat resolution warnings as errors");
  app.add_flag("--list-corpus", list_corpus, "list corpus members and exit");
  CLI11_PARSE(app, argc, argv);

  try {
    if (list_corpus) {
      for (const auto& m : lipsmooth::corpus(1, 12345))
        std::cout << m.name << "  L=" << m.lip_declared << "\n";
      return 0;
    }
    if (config_path.empty()) {
      std::cerr << "error: --config is required (or use --list-corpus)\n";
      return 2;
    }
    lipsmooth::RunConfig cfg = lipsmooth::parse_config_file(config_path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (strict) cfg.strict = true;
    return lipsmooth::run(cfg, std::cout);
  } catch (const lipsmooth::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const lipsmooth::ResolutionError& e) {
    std::cerr << "resolution error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
