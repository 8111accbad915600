#ifndef FOLE_CLI_WORKSPACE_HPP
#define FOLE_CLI_WORKSPACE_HPP

// The single-file JSON workspace: loading with per-item diagnostics and
// serialisation of every item kind back to the same format.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "fole/logic_db.hpp"

namespace fole::cli {

using json = nlohmann::ordered_json;

struct Diagnostic {
  std::string item;  // "<section>/<name>"
  std::string code;
  std::string detail;
  bool dropped = false;  // the item could not be built and is absent
};

struct NamedTable {
  std::string type_domain;
  Table table;
};

struct SpecEntry {
  std::string schema;
  AbstractSpec abstract;
  FormalSpec formal;
  std::vector<std::string> formal_text;
};

struct StructureEntry {
  std::string schema;
  bool strict = false;
  StrictStructure strict_form;  // only when strict
  LaxStructure lax;
};

template <class M>
struct Arrow {
  std::string source;
  std::string target;
  M morphism;
};

struct StructureMorphismEntry {
  std::string source;
  std::string target;
  bool strict = false;
  StrictStructureMorphism strict_form;
  LaxStructureMorphism lax;
};

struct Workspace {
  std::map<std::string, TypeDomain> type_domains;
  std::map<std::string, Signature> signatures;
  std::map<std::string, SignatureMorphism> sig_morphisms;
  std::map<std::string, std::pair<std::string, Schema>> schemas;  // name -> (type domain, schema)
  std::map<std::string, NamedTable> tables;
  std::map<std::string, StructureEntry> structures;
  std::map<std::string, SpecEntry> specs;
  std::map<std::string, std::pair<std::string, std::string>> logics;  // structure, spec
  std::map<std::string, std::pair<std::string, Database>> databases;  // spec, db
  std::map<std::string, LaxStructure> db_aspects;  // constraint-free aspect of each database
  std::map<std::string, Arrow<TypeDomainMorphism>> type_domain_morphisms;
  std::map<std::string, Arrow<SpecMorphism>> spec_morphisms;
  std::map<std::string, StructureMorphismEntry> structure_morphisms;
  std::map<std::string, Arrow<DatabaseMorphism>> db_morphisms;

  std::vector<Diagnostic> diagnostics;

  FormulaEnv env() const;

  // Throws UnresolvedReference / UnsatisfiedLogic.
  SoundLogic logic(const std::string& name) const;
  const Database& database(const std::string& name) const;
  // A structure, logic or database name.
  const LaxStructure& structure(const std::string& name) const;
};

// Throws ParseError for unreadable JSON; item-level problems become
// diagnostics and the item is skipped.
Workspace load_workspace(const json& doc);
Workspace load_workspace_file(const std::string& path);

json to_json(const TypeDomain& td);
json to_json(const Signature& sig);
json to_json(const Table& t);
json rows_json(const Table& t);
json to_json(const Schema& s, const std::string& type_domain);
json to_json(const AbstractSpec& t, const std::string& schema);
json to_json(const LaxStructure& m, const std::string& schema);
json to_json(const Database& db, const std::string& spec);

}  // namespace fole::cli

#endif
