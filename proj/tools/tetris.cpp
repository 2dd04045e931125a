#include <iostream>

#include "CLI11.hpp"
#include "tetris/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Multilateral obligation clearing engine"};
  app.require_subcommand(1);

  tetris::RunConfig config;
  std::string obligations, liquidity, output;
  bool no_split = false;
  std::string allocation = "id";

  auto* clear = app.add_subcommand("clear", "Clear the maximum balanced subsystem of an obligations file");
  clear->add_option("obligations", obligations, "Obligations file")->required()->check(CLI::ExistingFile);
  clear->add_option("--out", output, "Directory for the report files");
  clear->add_flag("--graph", config.emit_graph, "Also write graph.dot");
  clear->add_flag("--no-split", no_split, "Solve the whole network at once instead of per component");
  clear->add_option("--allocation", allocation, "Set-off allocation order: id or input")
      ->check(CLI::IsMember({"id", "input"}));

  auto* extended = app.add_subcommand("clear-extended", "Clear using account holdings and overdrafts");
  extended->add_option("obligations", obligations, "Obligations file")->required()->check(CLI::ExistingFile);
  extended->add_option("liquidity", liquidity, "Liquidity file")->required()->check(CLI::ExistingFile);
  extended->add_option("--out", output, "Directory for the report files");
  extended->add_flag("--graph", config.emit_graph, "Also write graph.dot");
  extended->add_option("--allocation", allocation, "Discharge allocation order: id or input")
      ->check(CLI::IsMember({"id", "input"}));

  auto* analyze = app.add_subcommand("analyze", "Print net positions, NID and balance diagnostics");
  analyze->add_option("obligations", obligations, "Obligations file")->required()->check(CLI::ExistingFile);

  auto* validate = app.add_subcommand("validate", "Validate an obligations or liquidity file");
  validate->add_option("file", obligations, "File to validate")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tetris::kExitValidationFailure;
  }

  if (*clear) config.mode = tetris::Mode::kClear;
  if (*extended) config.mode = tetris::Mode::kClearExtended;
  if (*analyze) config.mode = tetris::Mode::kAnalyze;
  if (*validate) config.mode = tetris::Mode::kValidate;

  config.inputs.emplace_back(obligations);
  if (!liquidity.empty()) config.inputs.emplace_back(liquidity);
  if (!output.empty()) config.output_dir = output;
  config.split_components = !no_split;
  config.allocation = allocation == "input" ? tetris::AllocationOrder::kInputOrder : tetris::AllocationOrder::kById;

  return tetris::run(config, std::cout, std::cerr);
}
