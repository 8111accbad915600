#include "fole/cli/workspace.hpp"

#include <fstream>
#include <sstream>

namespace fole::cli {

namespace {

[[noreturn]] void unresolved(const std::string& kind, const std::string& name) {
  throw Error("UnresolvedReference", kind + " '" + name + "'");
}

template <class Map>
const auto& lookup(const Map& m, const std::string& kind, const std::string& name) {
  auto it = m.find(name);
  if (it == m.end()) unresolved(kind, name);
  return it->second;
}

std::vector<std::pair<std::string, std::string>> string_pairs(const json& obj) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, v] : obj.items()) out.emplace_back(k, v.get<std::string>());
  return out;
}

std::map<std::string, std::string> string_map(const json& obj) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : obj.items()) out[k] = v.get<std::string>();
  return out;
}

class Loader {
 public:
  explicit Loader(Workspace& ws) : ws_(ws) {}

  // Runs `build` for every entry of a section; failures become diagnostics.
  template <class F>
  void each(const json& doc, const char* section, F build) {
    if (!doc.contains(section)) return;
    for (const auto& [name, item] : doc.at(section).items()) {
      try {
        build(name, item);
      } catch (const Error& e) {
        ws_.diagnostics.push_back({std::string(section) + "/" + name, e.code(), e.detail(), true});
      } catch (const json::exception& e) {
        ws_.diagnostics.push_back({std::string(section) + "/" + name, "ParseError", e.what(), true});
      }
    }
  }

  void note(const std::string& item, const Verdict& v) {
    if (!v) ws_.diagnostics.push_back({item, v.code(), v.detail(), false});
  }

  Signature signature(const json& j) const {
    if (j.is_string()) return lookup(ws_.signatures, "signature", j.get<std::string>());
    std::vector<Attribute> attrs;
    for (const auto& a : j) attrs.push_back({a.at(0).get<std::string>(), a.at(1).get<std::string>()});
    return Signature(std::move(attrs));
  }

  Table table(const json& j, const Signature& sig) const {
    if (j.contains("signature") && signature(j.at("signature")) != sig)
      throw Error("SignatureMismatch", "declared " + to_string(signature(j.at("signature"))) +
                                           ", expected " + to_string(sig));
    Table t(sig);
    if (j.contains("rows"))
      for (const auto& [k, row] : j.at("rows").items()) t.insert(k, row.get<Tuple>());
    return t;
  }

  std::map<std::string, Table> tables_for(const json& j, const Schema& schema) const {
    std::map<std::string, Table> out;
    for (const auto& r : schema.predicates()) {
      const Signature& sig = schema.signature(r);
      out.emplace(r, j.contains(r) ? table(j.at(r), sig) : Table(sig));
    }
    for (const auto& [r, t] : j.items())
      if (!schema.has(r)) throw Error("UnknownPredicate", r);
    return out;
  }

  std::map<std::string, SignatureMorphism> bridge(const json& j,
                                                  const std::map<std::string, std::string>& pm,
                                                  const std::map<Sort, Sort>& f,
                                                  const Schema& s2, const Schema& s1) const {
    std::map<std::string, SignatureMorphism> out;
    for (const auto& [r2, names] : j.items()) {
      if (!s2.has(r2)) throw Error("UnknownPredicate", r2);
      std::vector<Attribute> pushed;
      for (const auto& a : s2.signature(r2).attributes()) {
        auto it = f.find(a.sort);
        if (it == f.end()) throw Error("UnmappedSort", a.sort);
        pushed.push_back({a.name, it->second});
      }
      auto r1 = pm.find(r2);
      if (r1 == pm.end()) throw Error("UnmappedPredicate", r2);
      out.emplace(r2, SignatureMorphism::from_names(Signature(pushed), s1.signature(r1->second),
                                                    string_pairs(names)));
    }
    return out;
  }

  std::map<std::string, std::map<Key, Key>> key_bridge(const json& j) const {
    std::map<std::string, std::map<Key, Key>> out;
    for (const auto& [r2, m] : j.items()) out[r2] = string_map(m);
    return out;
  }

 private:
  Workspace& ws_;
};

}  // namespace

FormulaEnv Workspace::env() const { return FormulaEnv{signatures, sig_morphisms}; }

SoundLogic Workspace::logic(const std::string& name) const {
  const auto& [structure_name, spec_name] = lookup(logics, "logic", name);
  const auto& s = lookup(structures, "structure", structure_name);
  const auto& t = lookup(specs, "spec", spec_name);
  return SoundLogic{s.lax, t.abstract};
}

const Database& Workspace::database(const std::string& name) const {
  return lookup(databases, "database", name).second;
}

const LaxStructure& Workspace::structure(const std::string& name) const {
  if (auto it = structures.find(name); it != structures.end()) return it->second.lax;
  if (auto it = logics.find(name); it != logics.end())
    return lookup(structures, "structure", it->second.first).lax;
  if (auto it = db_aspects.find(name); it != db_aspects.end()) return it->second;
  unresolved("structure", name);
}

Workspace load_workspace(const json& doc) {
  Workspace ws;
  Loader ld(ws);

  ld.each(doc, "typeDomains", [&](const std::string& name, const json& j) {
    std::vector<std::pair<Sort, std::vector<Value>>> extents;
    for (const auto& [x, values] : j.at("sorts").items())
      extents.emplace_back(x, values.get<std::vector<Value>>());
    std::vector<Value> extra;
    if (j.contains("unclassified")) extra = j.at("unclassified").get<std::vector<Value>>();
    ws.type_domains.emplace(name, TypeDomain(std::move(extents), std::move(extra)));
  });

  ld.each(doc, "signatures", [&](const std::string& name, const json& j) {
    ws.signatures.emplace(name, ld.signature(j));
  });

  ld.each(doc, "sigMorphisms", [&](const std::string& name, const json& j) {
    auto h = SignatureMorphism::from_names(ld.signature(j.at("source")),
                                           ld.signature(j.at("target")),
                                           string_pairs(j.at("map")));
    ld.note("sigMorphisms/" + name, check_signature_morphism(h));
    ws.sig_morphisms.emplace(name, std::move(h));
  });

  ld.each(doc, "schemas", [&](const std::string& name, const json& j) {
    std::string td = j.at("typeDomain").get<std::string>();
    const auto& a = lookup(ws.type_domains, "type domain", td);
    Schema s;
    for (const auto& [r, sig] : j.at("predicates").items()) s.add(r, ld.signature(sig));
    ld.note("schemas/" + name, s.validate(a));
    ws.schemas.emplace(name, std::make_pair(td, std::move(s)));
  });

  ld.each(doc, "tables", [&](const std::string& name, const json& j) {
    std::string td = j.at("typeDomain").get<std::string>();
    const auto& a = lookup(ws.type_domains, "type domain", td);
    Table t = ld.table(j, ld.signature(j.at("signature")));
    ld.note("tables/" + name, validate_table(t, a));
    ws.tables.emplace(name, NamedTable{td, std::move(t)});
  });

  ld.each(doc, "structures", [&](const std::string& name, const json& j) {
    StructureEntry e;
    e.schema = j.at("schema").get<std::string>();
    const auto& [td, schema] = lookup(ws.schemas, "schema", e.schema);
    const auto& a = lookup(ws.type_domains, "type domain", td);
    std::string kind = j.value("kind", "lax");
    if (kind == "strict") {
      e.strict = true;
      e.strict_form = StrictStructure{schema, a, {}, {}, {}};
      if (j.contains("keys"))
        for (const auto& [k, entry] : j.at("keys").items()) {
          e.strict_form.keys.push_back(k);
          e.strict_form.tuple_of[k] = entry.at("tuple").get<Tuple>();
          auto preds = entry.value("predicates", std::vector<std::string>{});
          if (!preds.empty()) e.strict_form.classifies[k].insert(preds.begin(), preds.end());
        }
      validate_strict(e.strict_form).raise();
      e.lax = to_lax(e.strict_form);
    } else if (kind == "lax") {
      e.lax = LaxStructure{schema, a, ld.tables_for(j.value("tables", json::object()), schema)};
      ld.note("structures/" + name, validate_lax(e.lax));
    } else {
      throw Error("ParseError", "unknown structure kind '" + kind + "'");
    }
    ws.structures.emplace(name, std::move(e));
  });

  ld.each(doc, "specs", [&](const std::string& name, const json& j) {
    SpecEntry e;
    e.schema = j.at("schema").get<std::string>();
    const auto& [td, schema] = lookup(ws.schemas, "schema", e.schema);
    e.abstract.schema = schema;
    for (const auto& c : j.value("constraints", json::array())) {
      std::string src = c.at("sourcePredicate").get<std::string>();
      std::string tgt = c.at("targetPredicate").get<std::string>();
      auto h = SignatureMorphism::from_names(schema.signature(src), schema.signature(tgt),
                                             string_pairs(c.at("h")));
      e.abstract.constraints.push_back({c.at("name").get<std::string>(), src, tgt, std::move(h)});
    }
    for (const auto& eq : j.value("equations", json::array()))
      e.abstract.equations.push_back({eq.at(0).get<Path>(), eq.at(1).get<Path>()});
    FormulaEnv env = ws.env();
    for (const auto& text : j.value("formalConstraints", json::array())) {
      e.formal_text.push_back(text.get<std::string>());
      Constraint c = [&] {
        try {
          return parse_constraint(e.formal_text.back(), schema, env);
        } catch (const Error& err) {
          // Names a formula cannot resolve are workspace references.
          if (err.code() == "UnknownMorphism" || err.code() == "UnknownSignature" ||
              err.code() == "UnknownPredicate")
            throw Error("UnresolvedReference", err.detail());
          throw;
        }
      }();
      check_constraint(c, schema).raise();
      e.formal.constraints.push_back(std::move(c));
    }
    ld.note("specs/" + name, validate_spec(e.abstract, ws.type_domains.at(td)));
    ws.specs.emplace(name, std::move(e));
  });

  ld.each(doc, "logics", [&](const std::string& name, const json& j) {
    std::string s = j.at("structure").get<std::string>();
    std::string t = j.at("spec").get<std::string>();
    lookup(ws.structures, "structure", s);
    lookup(ws.specs, "spec", t);
    ws.logics.emplace(name, std::make_pair(s, t));
    ld.note("logics/" + name, validate_sound_logic(ws.logic(name)));
  });

  ld.each(doc, "databases", [&](const std::string& name, const json& j) {
    std::string spec = j.at("spec").get<std::string>();
    const auto& t = lookup(ws.specs, "spec", spec);
    const auto& [td, schema] = lookup(ws.schemas, "schema", t.schema);
    Database db{t.abstract, ws.type_domains.at(td),
                ld.tables_for(j.value("tables", json::object()), schema), {}};
    const json maps = j.value("constraintMaps", json::object());
    for (const auto& c : t.abstract.constraints)
      db.constraint_maps.emplace(
          c.name, TableMorphism{c.h, maps.contains(c.name) ? string_map(maps.at(c.name))
                                                           : std::map<Key, Key>{}});
    for (const auto& [p, m] : maps.items())
      if (!t.abstract.has_constraint(p)) throw Error("UnknownConstraint", p);
    ld.note("databases/" + name, validate_database(db));
    ws.db_aspects.emplace(name, LaxStructure{db.schema.schema, db.type_domain, db.tables});
    ws.databases.emplace(name, std::make_pair(spec, std::move(db)));
  });

  ld.each(doc, "typeDomainMorphisms", [&](const std::string& name, const json& j) {
    Arrow<TypeDomainMorphism> a{j.at("source").get<std::string>(),
                                j.at("target").get<std::string>(),
                                {string_map(j.at("sortMap")), string_map(j.at("valueMap"))}};
    ld.note("typeDomainMorphisms/" + name,
            check_type_domain_morphism(a.morphism, lookup(ws.type_domains, "type domain", a.source),
                                       lookup(ws.type_domains, "type domain", a.target)));
    ws.type_domain_morphisms.emplace(name, std::move(a));
  });

  ld.each(doc, "specMorphisms", [&](const std::string& name, const json& j) {
    Arrow<SpecMorphism> a{j.at("source").get<std::string>(), j.at("target").get<std::string>(), {}};
    const auto& t2 = lookup(ws.specs, "spec", a.source).abstract;
    const auto& t1 = lookup(ws.specs, "spec", a.target).abstract;
    auto& m = a.morphism;
    m.predicate_map = string_map(j.at("predicateMap"));
    m.sort_map = string_map(j.at("sortMap"));
    const json cmap = j.value("constraintMap", json::object());
    for (const auto& [p2, path] : cmap.items())
      m.constraint_map[p2] = path.get<Path>();
    m.bridge = ld.bridge(j.at("bridge"), m.predicate_map, m.sort_map, t2.schema, t1.schema);
    ld.note("specMorphisms/" + name, validate_spec_morphism(m, t2, t1));
    ws.spec_morphisms.emplace(name, std::move(a));
  });

  ld.each(doc, "structureMorphisms", [&](const std::string& name, const json& j) {
    StructureMorphismEntry e;
    e.source = j.at("source").get<std::string>();
    e.target = j.at("target").get<std::string>();
    const auto& s2 = lookup(ws.structures, "structure", e.source);
    const auto& s1 = lookup(ws.structures, "structure", e.target);
    const auto& tdm =
        lookup(ws.type_domain_morphisms, "type-domain morphism",
               j.at("typeDomainMorphism").get<std::string>()).morphism;
    auto pm = string_map(j.at("predicateMap"));
    auto br = ld.bridge(j.at("bridge"), pm, tdm.sort_map, s2.lax.schema, s1.lax.schema);
    e.strict = j.value("kind", "lax") == "strict";
    if (e.strict) {
      if (!s2.strict || !s1.strict)
        throw Error("KindMismatch", "strict morphism between non-strict structures");
      e.strict_form = StrictStructureMorphism{pm, br, tdm, string_map(j.at("keyMap"))};
      Verdict v = validate_strict_morphism(e.strict_form, s2.strict_form, s1.strict_form);
      ld.note("structureMorphisms/" + name, v);
      if (check_entity_infomorphism(e.strict_form, s2.strict_form, s1.strict_form))
        e.lax = strict_morphism_to_lax(e.strict_form, s2.strict_form, s1.strict_form);
      else
        e.lax = LaxStructureMorphism{pm, br, tdm, {}};
    } else {
      e.lax = LaxStructureMorphism{pm, br, tdm, ld.key_bridge(j.value("keyBridge", json::object()))};
      ld.note("structureMorphisms/" + name, validate_lax_morphism(e.lax, s2.lax, s1.lax));
    }
    ws.structure_morphisms.emplace(name, std::move(e));
  });

  ld.each(doc, "dbMorphisms", [&](const std::string& name, const json& j) {
    Arrow<DatabaseMorphism> a{j.at("source").get<std::string>(), j.at("target").get<std::string>(), {}};
    const Database& db2 = ws.database(a.source);
    const Database& db1 = ws.database(a.target);
    a.morphism.schema_map =
        lookup(ws.spec_morphisms, "spec morphism", j.at("specMorphism").get<std::string>()).morphism;
    a.morphism.type_map = lookup(ws.type_domain_morphisms, "type-domain morphism",
                                 j.at("typeDomainMorphism").get<std::string>())
                              .morphism;
    a.morphism.key_bridge = ld.key_bridge(j.value("keyBridge", json::object()));
    ld.note("dbMorphisms/" + name, validate_db_morphism(a.morphism, db2, db1));
    ws.db_morphisms.emplace(name, std::move(a));
  });

  return ws;
}

Workspace load_workspace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("ParseError", "cannot open workspace '" + path + "'");
  try {
    return load_workspace(json::parse(in));
  } catch (const json::parse_error& e) {
    throw Error("ParseError", path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Serialisation

json to_json(const TypeDomain& td) {
  json sorts = json::object();
  for (const auto& x : td.sorts()) sorts[x] = td.extent(x);
  json out = {{"sorts", sorts}};
  if (!td.unclassified().empty()) out["unclassified"] = td.unclassified();
  return out;
}

json to_json(const Signature& sig) {
  json out = json::array();
  for (const auto& a : sig.attributes()) out.push_back({a.name, a.sort});
  return out;
}

json rows_json(const Table& t) {
  json rows = json::object();
  for (const auto& k : t.keys()) rows[k] = t.tuple_of(k);
  return rows;
}

json to_json(const Table& t) { return {{"signature", to_json(t.signature())}, {"rows", rows_json(t)}}; }

json to_json(const Schema& s, const std::string& type_domain) {
  json preds = json::object();
  for (const auto& r : s.predicates()) preds[r] = to_json(s.signature(r));
  return {{"typeDomain", type_domain}, {"predicates", preds}};
}

json to_json(const AbstractSpec& t, const std::string& schema) {
  json cs = json::array();
  for (const auto& c : t.constraints) {
    json h = json::object();
    for (std::size_t i = 0; i < c.h.map().size(); ++i)
      h[c.h.source()[i].name] = c.h.target()[c.h(i)].name;
    cs.push_back({{"name", c.name}, {"sourcePredicate", c.source}, {"targetPredicate", c.target}, {"h", h}});
  }
  json out = {{"schema", schema}, {"constraints", cs}};
  if (!t.equations.empty()) {
    json eqs = json::array();
    for (const auto& eq : t.equations) eqs.push_back({eq.lhs, eq.rhs});
    out["equations"] = eqs;
  }
  return out;
}

json to_json(const LaxStructure& m, const std::string& schema) {
  json tables = json::object();
  for (const auto& r : m.schema.predicates()) tables[r] = to_json(m.table(r));
  return {{"kind", "lax"}, {"schema", schema}, {"tables", tables}};
}

json to_json(const Database& db, const std::string& spec) {
  json tables = json::object();
  for (const auto& r : db.schema.schema.predicates()) tables[r] = to_json(db.table(r));
  json maps = json::object();
  for (const auto& c : db.schema.constraints) {
    json km = json::object();
    const auto& m = db.constraint_maps.at(c.name);
    for (const auto& k : db.table(c.target).keys())
      if (auto it = m.key_map.find(k); it != m.key_map.end()) km[k] = it->second;
    maps[c.name] = km;
  }
  return {{"spec", spec}, {"tables", tables}, {"constraintMaps", maps}};
}

}  // namespace fole::cli
