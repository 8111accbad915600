#ifndef FOLE_TESTS_UNIT_FIXTURE_HPP
#define FOLE_TESTS_UNIT_FIXTURE_HPP

#include "fole/cli/workspace.hpp"

namespace fole::testing {

// The company workspace, loaded once per process.
inline const cli::Workspace& company() {
  static const cli::Workspace ws = cli::load_workspace_file(FOLE_FIXTURE);
  return ws;
}

}  // namespace fole::testing

#endif
