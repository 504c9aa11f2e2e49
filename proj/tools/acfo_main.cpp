// acfo: command line front end. Exit codes: 0 success, 1 domain error,
// 2 usage error.

#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace acfo::cli;
  RunConfig cfg;
  CLI::App app{"Experiments with finite fields ordered by a character chi, and the decision procedure for special sentences"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; command line flags take precedence");
  app.add_option("--threads", cfg.threads, "worker thread cap")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for randomized commands");
  app.add_option("--format", cfg.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output", cfg.output, "write to this file instead of stdout");
  app.add_option("--max-order", cfg.max_order, "cap on p^L - 1")->check(CLI::PositiveNumber);
  app.add_option("--enum-budget", cfg.enum_budget, "cap on enumerated tuples")->check(CLI::PositiveNumber);
  app.add_option("--dlog-budget", cfg.dlog_budget, "cap on a baby-step table")->check(CLI::PositiveNumber);
  app.add_option("--angle-cap", cfg.angle_cap, "largest exact angle histogram")->check(CLI::PositiveNumber);

  add_field_info(app, cfg);
  add_chi_table(app, cfg);
  add_invariants(app, cfg);
  add_order(app, cfg);
  add_wn(app, cfg);
  add_predp(app, cfg);
  add_points(app, cfg);
  add_largeness(app, cfg);
  add_probe(app, cfg);
  add_charsum(app, cfg);
  add_langweil(app, cfg);
  add_weil(app, cfg);
  add_weyl(app, cfg);
  add_boxes(app, cfg);
  add_theta(app, cfg);
  add_decide(app, cfg);
  add_selftest(app, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const acfo::Error& e) {
    std::cerr << nlohmann::json({{"schema", "acfo.error/1"}, {"code", acfo::error_name(e.code())}, {"message", e.what()}}).dump()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json({{"schema", "acfo.error/1"}, {"code", "Internal"}, {"message", e.what()}}).dump() << "\n";
    return 1;
  }
  return 0;
}
