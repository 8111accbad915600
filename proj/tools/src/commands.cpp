#include "fole/cli/commands.hpp"

#include <fstream>

namespace fole::cli {

namespace {

ReportItem ok(std::string name, std::string note = {}) {
  return {std::move(name), Verdict::ok(), std::move(note)};
}

ReportItem from(std::string name, Verdict v) { return {std::move(name), std::move(v), {}}; }

int status(const std::vector<ReportItem>& items) {
  for (const auto& i : items)
    if (!i.verdict) return 1;
  return 0;
}

// Load-time diagnostics for an item that could not be built.
std::vector<ReportItem> dropped(const Workspace& ws, const std::string& section,
                                const std::string& name) {
  std::vector<ReportItem> out;
  for (const auto& d : ws.diagnostics)
    if (d.item == section + "/" + name) out.push_back(from(name, Verdict::fail(d.code, d.detail)));
  if (out.empty())
    out.push_back(from(name, Verdict::fail("UnresolvedReference", section + " '" + name + "'")));
  return out;
}

json tuple_rows(const std::vector<Tuple>& tuples) {
  json out = json::array();
  for (const auto& t : tuples) out.push_back(t);
  return out;
}

std::string describe(const ConstraintVerdict& v, const std::string& h) {
  if (const auto* w = std::get_if<ConstraintWitness>(&v))
    return "witness " + h + " over " + std::to_string(w->morphism.key_map.size()) + " keys";
  return {};
}

void emit_fragment(const json& fragment, const std::string& name, const Options& opts,
                   std::ostream& out) {
  if (opts.out.empty()) {
    out << fragment.dump(2) << "\n";
    return;
  }
  std::ofstream file(opts.out);
  if (!file) throw Error("IOError", "cannot write '" + opts.out + "'");
  file << fragment.dump(2) << "\n";
  print_report("write", {ok(name, "wrote " + opts.out)}, opts.json, out);
}

struct Names {
  std::string spec, schema, type_domain;
};

Names names_of_spec(const Workspace& ws, const std::string& spec) {
  auto s = ws.specs.find(spec);
  if (s == ws.specs.end()) throw Error("UnresolvedReference", "spec '" + spec + "'");
  return {spec, s->second.schema, ws.schemas.at(s->second.schema).first};
}

json base_fragment(const Workspace& ws, const Names& n) {
  const auto& [td, schema] = ws.schemas.at(n.schema);
  json out = json::object();
  out["typeDomains"][n.type_domain] = to_json(ws.type_domains.at(td));
  out["schemas"][n.schema] = to_json(schema, n.type_domain);
  out["specs"][n.spec] = to_json(ws.specs.at(n.spec).abstract, n.schema);
  return out;
}

}  // namespace

void print_report(const std::string& command, const std::vector<ReportItem>& items,
                  bool as_json, std::ostream& out) {
  if (as_json) {
    json j = {{"command", command}, {"ok", status(items) == 0}, {"items", json::array()}};
    for (const auto& i : items) {
      json item = {{"name", i.name}, {"status", i.verdict ? "OK" : "FAIL"}};
      if (!i.verdict) {
        item["code"] = i.verdict.code();
        item["detail"] = i.verdict.detail();
      } else if (!i.note.empty()) {
        item["note"] = i.note;
      }
      j["items"].push_back(item);
    }
    out << j.dump(2) << "\n";
    return;
  }
  for (const auto& i : items) {
    out << "ITEM " << i.name << ": ";
    if (i.verdict) {
      out << "OK";
      if (!i.note.empty()) out << " " << i.note;
    } else {
      out << "FAIL " << i.verdict.code();
      if (!i.verdict.detail().empty()) out << " " << i.verdict.detail();
    }
    out << "\n";
  }
}

int cmd_eval(const Workspace& ws, const std::string& structure, const std::string& formula,
             const Options& opts, std::ostream& out) {
  const LaxStructure& m = ws.structure(structure);
  Formula f = parse_formula(formula, m.schema, ws.env());
  Relation r = interpret_relation(m, f);
  auto rows = in_enumeration_order(r, m.type_domain);

  if (opts.json) {
    json j = {{"structure", structure},
              {"formula", print_formula(f)},
              {"signature", to_json(r.signature)},
              {"tuples", tuple_rows(rows)}};
    if (opts.as_table) j["table"] = rows_json(interpret_table(m, f));
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "formula " << print_formula(f) << "\n";
  out << "signature " << to_string(r.signature) << "\n";
  out << "tuples " << rows.size() << "\n";
  for (const auto& t : rows) out << format_tuple(t) << "\n";
  if (opts.as_table) {
    Table t = interpret_table(m, f);
    out << "keys " << t.size() << "\n";
    for (const auto& k : t.keys()) out << k << " -> " << format_tuple(t.tuple_of(k)) << "\n";
  }
  return 0;
}

int cmd_check(const Workspace& ws, const std::string& what,
              const std::vector<std::string>& names, const Options& opts, std::ostream& out) {
  std::vector<ReportItem> items;

  if (what == "structure") {
    for (const auto& n : names) {
      auto it = ws.structures.find(n);
      if (it == ws.structures.end()) {
        auto d = dropped(ws, "structures", n);
        items.insert(items.end(), d.begin(), d.end());
        continue;
      }
      const auto& e = it->second;
      items.push_back(from(n, e.strict ? validate_strict(e.strict_form) : validate_lax(e.lax)));
    }
  } else if (what == "database") {
    for (const auto& n : names) {
      if (!ws.databases.count(n)) {
        auto d = dropped(ws, "databases", n);
        items.insert(items.end(), d.begin(), d.end());
        continue;
      }
      items.push_back(from(n, validate_database(ws.database(n))));
    }
  } else if (what == "spec-sat") {
    // Either a logic name, or a structure name followed by a spec name.
    if (names.empty() || names.size() > 2)
      throw Error("Usage", "spec-sat takes LOGIC or STRUCTURE SPEC");
    const LaxStructure* m = nullptr;
    const SpecEntry* spec = nullptr;
    if (names.size() == 1) {
      auto l = ws.logics.find(names[0]);
      if (l == ws.logics.end()) throw Error("UnresolvedReference", "logic '" + names[0] + "'");
      m = &ws.structure(l->second.first);
      spec = &ws.specs.at(l->second.second);
    } else {
      m = &ws.structure(names[0]);
      auto s = ws.specs.find(names[1]);
      if (s == ws.specs.end()) throw Error("UnresolvedReference", "spec '" + names[1] + "'");
      spec = &s->second;
    }
    if (!(m->schema == spec->abstract.schema))
      throw Error("SchemaMismatch", "structure and spec use different schemas");

    SpecReport report = satisfies_spec(*m, spec->abstract);
    SpecReport formal = satisfies_spec(*m, spec->formal);
    for (const auto* rep : {&report, &formal})
      for (const auto& [name, v] : rep->items) {
        if (const auto* r = std::get_if<Refutation>(&v))
          items.push_back(from(name, Verdict::fail("Unsatisfied", format_tuple(r->tuple))));
        else
          items.push_back(ok(name, describe(v, name)));
      }

    auto passage = abstract_table_passage(*m, spec->abstract);
    if (const auto* tp = std::get_if<TablePassage>(&passage)) {
      Verdict v = Verdict::ok();
      for (const auto& c : spec->abstract.constraints) {
        const auto& arrow = tp->arrows.at(c.name);
        v = check_table_morphism(as_table_morphism(arrow), relation_include(arrow.source),
                                 relation_include(arrow.target));
        if (!v) break;
      }
      if (v && !report.satisfied())
        v = Verdict::fail("KeyPropositionDisagreement", "passage exists but a constraint fails");
      items.push_back(v ? ok("passage", std::to_string(tp->arrows.size()) + " arrows")
                        : from("passage", v));
    } else {
      const auto& r = std::get<Refutation>(passage);
      items.push_back(from("passage", Verdict::fail("Unsatisfied", r.constraint + " at " +
                                                                       format_tuple(r.tuple))));
    }
  } else if (what == "morphism") {
    for (const auto& n : names) {
      if (auto it = ws.type_domain_morphisms.find(n); it != ws.type_domain_morphisms.end()) {
        const auto& a = it->second;
        items.push_back(from(n, check_type_domain_morphism(a.morphism, ws.type_domains.at(a.source),
                                                           ws.type_domains.at(a.target))));
      } else if (auto it = ws.spec_morphisms.find(n); it != ws.spec_morphisms.end()) {
        const auto& a = it->second;
        items.push_back(from(n, validate_spec_morphism(a.morphism, ws.specs.at(a.source).abstract,
                                                       ws.specs.at(a.target).abstract)));
      } else if (auto it = ws.structure_morphisms.find(n); it != ws.structure_morphisms.end()) {
        const auto& e = it->second;
        const auto& s2 = ws.structures.at(e.source);
        const auto& s1 = ws.structures.at(e.target);
        Verdict v = e.strict ? validate_strict_morphism(e.strict_form, s2.strict_form, s1.strict_form)
                             : validate_lax_morphism(e.lax, s2.lax, s1.lax);
        items.push_back(from(n, v));
      } else if (auto it = ws.db_morphisms.find(n); it != ws.db_morphisms.end()) {
        const auto& a = it->second;
        items.push_back(
            from(n, validate_db_morphism(a.morphism, ws.database(a.source), ws.database(a.target))));
      } else {
        for (const char* section :
             {"typeDomainMorphisms", "specMorphisms", "structureMorphisms", "dbMorphisms"})
          for (const auto& d : ws.diagnostics)
            if (d.item == std::string(section) + "/" + n)
              items.push_back(from(n, Verdict::fail(d.code, d.detail)));
        if (items.empty() || items.back().name != n)
          items.push_back(from(n, Verdict::fail("UnresolvedReference", "morphism '" + n + "'")));
      }
    }
  } else {
    throw Error("Usage", "unknown check target '" + what + "'");
  }

  print_report("check " + what, items, opts.json, out);
  return status(items);
}

int cmd_convert(const Workspace& ws, const std::string& direction, const std::string& name,
                const Options& opts, std::ostream& out) {
  json fragment;
  if (direction == "snd-to-db") {
    auto l = ws.logics.find(name);
    if (l == ws.logics.end()) throw Error("UnresolvedReference", "logic '" + name + "'");
    SoundLogic logic = ws.logic(name);
    validate_sound_logic(logic).raise();
    Names n = names_of_spec(ws, l->second.second);
    fragment = base_fragment(ws, n);
    fragment["databases"][name] = to_json(snd_to_db(logic), n.spec);
  } else if (direction == "db-to-snd" || direction == "db-image") {
    auto d = ws.databases.find(name);
    if (d == ws.databases.end()) throw Error("UnresolvedReference", "database '" + name + "'");
    const Database& db = d->second.second;
    validate_database(db).raise();
    Names n = names_of_spec(ws, d->second.first);
    fragment = base_fragment(ws, n);
    if (direction == "db-image") {
      fragment["databases"][name] = to_json(db_image(db), n.spec);
    } else {
      SoundLogic l = db_to_snd(db);
      fragment["structures"][name] = to_json(l.structure, n.schema);
      fragment["logics"][name] = {{"structure", name}, {"spec", n.spec}};
    }
  } else {
    throw Error("Usage", "unknown conversion '" + direction + "'");
  }
  emit_fragment(fragment, name, opts, out);
  return 0;
}

int cmd_migrate(const Workspace& ws, const std::string& table, const std::string& morphism,
                const std::string& direction, const Options& opts, std::ostream& out) {
  Direction dir;
  if (direction == "dextro") dir = Direction::Dextro;
  else if (direction == "levo") dir = Direction::Levo;
  else throw Error("Usage", "direction must be dextro or levo");

  auto a = ws.type_domain_morphisms.find(morphism);
  if (a == ws.type_domain_morphisms.end())
    throw Error("UnresolvedReference", "type-domain morphism '" + morphism + "'");
  const TypeDomain& a2 = ws.type_domains.at(a->second.source);
  const TypeDomain& a1 = ws.type_domains.at(a->second.target);

  const Table* input = nullptr;
  const TypeDomain* input_td = nullptr;
  std::string out_name = table;
  if (auto t = ws.tables.find(table); t != ws.tables.end()) {
    input = &t->second.table;
    input_td = &ws.type_domains.at(t->second.type_domain);
  } else if (auto colon = table.find(':'); colon != std::string::npos) {
    const LaxStructure& m = ws.structure(table.substr(0, colon));
    input = &m.table(table.substr(colon + 1));
    input_td = &m.type_domain;
    out_name[colon] = '.';
  } else {
    throw Error("UnresolvedReference", "table '" + table + "'");
  }

  const TypeDomain& expected = dir == Direction::Dextro ? a2 : a1;
  if (!(*input_td == expected))
    throw Error("TypeDomainMismatch", table + " is not over the " +
                                          (dir == Direction::Dextro ? "source" : "target") +
                                          " type domain of " + morphism);

  Table result = table_flow_type_domain(dir, a->second.morphism, *input, a2, a1);
  const std::string& result_td = dir == Direction::Dextro ? a->second.target : a->second.source;
  validate_table(result, ws.type_domains.at(result_td)).raise();

  json fragment = json::object();
  fragment["typeDomains"][result_td] = to_json(ws.type_domains.at(result_td));
  json t = {{"typeDomain", result_td}};
  t["signature"] = to_json(result.signature());
  t["rows"] = rows_json(result);
  fragment["tables"][out_name] = t;
  emit_fragment(fragment, out_name, opts, out);
  return 0;
}

}  // namespace fole::cli
