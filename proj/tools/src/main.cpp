#include <iostream>

#include "CLI11.hpp"

#include "fole/cli/commands.hpp"

using namespace fole::cli;

int main(int argc, char** argv) {
  CLI::App app{"fole: many-sorted first-order logic over relational tables"};
  app.require_subcommand(1);

  std::string workspace_path;
  Options opts;
  app.add_option("--workspace", workspace_path, "workspace JSON file")->required();
  app.add_flag("--json", opts.json, "machine-readable report");

  std::string structure, formula;
  auto* eval = app.add_subcommand("eval", "interpret a formula in a structure");
  eval->add_option("structure", structure, "structure, logic or database")->required();
  eval->add_option("formula", formula, "formula text")->required();
  eval->add_flag("--as-table", opts.as_table, "also print the keyed table");

  std::string what;
  std::vector<std::string> names;
  auto* check = app.add_subcommand("check", "validate workspace items");
  check->add_option("what", what, "structure | spec-sat | morphism | database")
      ->required()
      ->check(CLI::IsMember({"structure", "spec-sat", "morphism", "database"}));
  check->add_option("names", names, "item names")->required();

  std::string direction, name;
  auto* convert = app.add_subcommand("convert", "pass between sound logics and databases");
  convert->add_option("direction", direction, "snd-to-db | db-to-snd | db-image")
      ->required()
      ->check(CLI::IsMember({"snd-to-db", "db-to-snd", "db-image"}));
  convert->add_option("name", name, "logic or database")->required();
  convert->add_option("--out", opts.out, "write the fragment here");

  std::string table, morphism, flow;
  auto* migrate = app.add_subcommand("migrate", "move a table along a type-domain morphism");
  migrate->add_option("table", table, "table, or STRUCTURE:PREDICATE")->required();
  migrate->add_option("morphism", morphism, "type-domain morphism")->required();
  migrate->add_option("direction", flow, "dextro | levo")
      ->required()
      ->check(CLI::IsMember({"dextro", "levo"}));
  migrate->add_option("--out", opts.out, "write the fragment here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version exit 0; every other usage error exits 2.
    int status = app.exit(e);
    return status == 0 ? 0 : 2;
  }

  try {
    Workspace ws = load_workspace_file(workspace_path);
    for (const auto& d : ws.diagnostics)
      if (d.dropped) std::cerr << "dropped " << d.item << ": " << d.code << " " << d.detail << "\n";

    if (*eval) return cmd_eval(ws, structure, formula, opts, std::cout);
    if (*check) return cmd_check(ws, what, names, opts, std::cout);
    if (*convert) return cmd_convert(ws, direction, name, opts, std::cout);
    return cmd_migrate(ws, table, morphism, flow, opts, std::cout);
  } catch (const fole::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
