#ifndef FOLE_CLI_COMMANDS_HPP
#define FOLE_CLI_COMMANDS_HPP

// Command implementations behind the `fole` executable. Each writes its
// report to `out` and returns the process exit status.

#include <ostream>
#include <string>
#include <vector>

#include "fole/cli/workspace.hpp"

namespace fole::cli {

struct Options {
  bool as_table = false;
  bool json = false;
  std::string out;  // empty: write fragments to the report stream
};

struct ReportItem {
  std::string name;
  Verdict verdict;
  std::string note;  // appended after OK
};

// `ITEM <name>: OK|FAIL <code> [detail]`, or a JSON mirror.
void print_report(const std::string& command, const std::vector<ReportItem>& items,
                  bool as_json, std::ostream& out);

int cmd_eval(const Workspace& ws, const std::string& structure, const std::string& formula,
             const Options& opts, std::ostream& out);

// what: structure | spec-sat | morphism | database
int cmd_check(const Workspace& ws, const std::string& what,
              const std::vector<std::string>& names, const Options& opts, std::ostream& out);

// direction: snd-to-db | db-to-snd | db-image
int cmd_convert(const Workspace& ws, const std::string& direction, const std::string& name,
                const Options& opts, std::ostream& out);

// table: a standalone table, or "<structure or database>:<predicate>".
// direction: dextro | levo
int cmd_migrate(const Workspace& ws, const std::string& table, const std::string& morphism,
                const std::string& direction, const Options& opts, std::ostream& out);

}  // namespace fole::cli

#endif
