// ppdo_bench: converge | privacy | stoptime | theory
// Exit codes: 0 success, 1 config error, 2 runtime failure.

#include <iostream>

#include <CLI11.hpp>

#include "ppdo/experiments.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<std::string> out;
  std::optional<std::string> encryption;
  std::optional<std::string> algorithm;
  std::vector<double> stop;
  unsigned threads = 0;
};

ppdo::ExperimentConfig resolve(const Overrides& o) {
  ppdo::ExperimentConfig c = o.config.empty() ? ppdo::ExperimentConfig{} : ppdo::load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.trials) c.trials = *o.trials;
  if (o.out) c.out = *o.out;
  if (o.encryption) {
    if (*o.encryption != "on" && *o.encryption != "off") throw ppdo::ConfigError("--encryption: expected on or off");
    c.encryption = *o.encryption == "on";
  }
  if (o.algorithm) c.algorithms = {ppdo::parse_algorithm(*o.algorithm)};
  if (!o.stop.empty()) c.stop = o.stop;
  return c;
}

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "JSON experiment config")->check(CLI::ExistingFile);
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--trials", o.trials, "number of trials");
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--encryption", o.encryption, "on or off");
  sub->add_option("--algorithm", o.algorithm, "algorithm1, push_diging, subgradient_push, ab_pushpull");
  sub->add_option("--stop", o.stop, "stop criteria")->delimiter(',');
  sub->add_option("--threads", o.threads, "worker threads (0 = hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decentralized optimization experiments"};
  app.require_subcommand(1);
  Overrides o;
  auto* converge = app.add_subcommand("converge", "mean relative residual per iteration");
  auto* privacy = app.add_subcommand("privacy", "captured run, adversary inference, hex dump");
  auto* stoptime = app.add_subcommand("stoptime", "iterations and time to reach stop criteria");
  auto* theory = app.add_subcommand("theory", "convergence certificate for the configured schedule");
  for (auto* s : {converge, privacy, stoptime, theory}) add_common(s, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    const auto c = resolve(o);
    if (converge->parsed()) {
      for (const auto& s : ppdo::cmd_converge(c, o.threads).series)
        std::cout << ppdo::algorithm_name(s.algorithm) << " final_mean_residual " << ppdo::fmt17(s.mean.back())
                  << " -> " << s.csv << "\n";
    } else if (privacy->parsed()) {
      const auto r = ppdo::cmd_privacy(c);
      std::cout << "scenario " << c.privacy.scenario << " rank " << r.report.rank << " dof " << r.report.dof
                << " recovery_error " << ppdo::fmt17(r.recovery_error) << "\n";
      if (r.samples)
        std::cout << "samples " << r.samples->distances.size() << " distance min " << ppdo::fmt17(r.samples->min)
                  << " max " << ppdo::fmt17(r.samples->max) << "\n";
      std::cout << "report -> " << (std::filesystem::path(c.out) / "report.txt").string() << "\n";
    } else if (stoptime->parsed()) {
      for (const auto& r : ppdo::cmd_stoptime(c, o.threads).rows)
        std::cout << "criterion " << r.criterion << " encryption " << (r.encryption ? "on " : "off")
                  << " mean_iterations " << r.mean_iterations << " mean_seconds " << r.mean_seconds << "\n";
    } else if (theory->parsed()) {
      const auto r = ppdo::cmd_theory(c);
      std::cout << (r.certificate ? "certificate written" : "certificate none") << " -> " << r.path << "\n";
    }
  } catch (const ppdo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
