#pragma once

#include "CLI11.hpp"
#include "cli_support.hpp"

namespace acfo::cli {

// Each adder registers one subcommand whose callback reads cfg at run time.
void add_field_info(CLI::App& app, const RunConfig& cfg);
void add_chi_table(CLI::App& app, const RunConfig& cfg);
void add_invariants(CLI::App& app, const RunConfig& cfg);
void add_order(CLI::App& app, const RunConfig& cfg);
void add_wn(CLI::App& app, const RunConfig& cfg);
void add_predp(CLI::App& app, const RunConfig& cfg);

void add_points(CLI::App& app, const RunConfig& cfg);
void add_largeness(CLI::App& app, const RunConfig& cfg);
void add_probe(CLI::App& app, const RunConfig& cfg);

void add_charsum(CLI::App& app, const RunConfig& cfg);
void add_langweil(CLI::App& app, const RunConfig& cfg);
void add_weil(CLI::App& app, const RunConfig& cfg);
void add_weyl(CLI::App& app, const RunConfig& cfg);
void add_boxes(CLI::App& app, const RunConfig& cfg);

void add_theta(CLI::App& app, const RunConfig& cfg);
void add_decide(CLI::App& app, const RunConfig& cfg);
void add_selftest(CLI::App& app, const RunConfig& cfg);

}  // namespace acfo::cli
