#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fcl/ast.hpp"
#include "fcl/types.hpp"

namespace fcl {

// One entry of a flattened species. Statements (properties/theorems) track
// their proof and its dependency sets so redefinition can erase exactly the
// def-dependent proofs.
struct MethodEntry {
  enum class Kind { Function, LogicalDef, Statement };
  Kind kind = Kind::Function;
  std::string name;
  Span span;

  TypePtr type;  // Function: value or arrow type; others null until typecheck
  std::vector<std::pair<std::string, TypePtr>> params;  // resolved at typecheck
  std::vector<std::pair<std::string, TypeExprPtr>> surface_params;
  TypeExprPtr surface_type;  // declared signature / return annotation
  bool has_params = false;

  ExprPtr body;        // Function definition
  FormulaPtr formula;  // LogicalDef body / Statement statement

  bool is_final = false;
  bool is_recursive = false;
  std::optional<std::string> termination_var;

  bool defined = false;  // Function/LogicalDef with body, or Statement proved
  bool proved = false;   // Statement only
  bool erased = false;   // proof dropped by a redefinition
  std::optional<Proof> proof;
  std::string origin;        // species contributing the current body
  std::string proof_origin;  // species contributing the current proof
  std::set<std::string> def_deps, decl_deps;
};

struct FlatSpecies {
  std::string name;
  Span span;
  // parameter name -> interface species name (e.g. A -> Setoid)
  std::vector<std::pair<std::string, std::string>> params;
  TypePtr carrier;  // null while only declared
  std::string carrier_origin;
  std::vector<MethodEntry> methods;  // stable merge order

  MethodEntry* find(const std::string& n);
  const MethodEntry* find(const std::string& n) const;
  bool is_param(const std::string& n) const;
  std::string param_interface(const std::string& n) const;
};

struct CollectionInfo {
  std::string name;
  Span span;
  std::string species;  // implemented species
  FlatSpecies flat;     // instantiated copy (params renamed to collections)
  // parameter name (as in the species) -> argument collection name
  std::vector<std::pair<std::string, std::string>> bindings;
};

struct Env {
  std::map<std::string, FlatSpecies> species;
  std::map<std::string, CollectionInfo> collections;
  std::vector<std::string> order;  // processing order of species names

  const FlatSpecies* find_species(const std::string& n) const;
  const CollectionInfo* find_collection(const std::string& n) const;
};

// Resolves inheritance and parameter instantiation into a flat method table.
// Throws E-UNKNOWN-SPECIES, E-ARITY, E-INTERFACE, E-TYPECLASH, E-FINAL,
// E-CARRIER, E-INHERIT-COLLECTION, E-UNKNOWN-CITATION, E-PROOF-OF.
FlatSpecies flatten(const SpeciesDecl& decl, const Env& env);

// Structural termination: every recursive call must pass a strict
// sub-pattern of the designated parameter. Throws E-NONSTRUCTURAL.
void check_termination(const FlatSpecies& flat);

// Citation scan of one proof: def_deps from `definition of`, decl_deps from
// `property`/`theorem` citations. Names are not resolved here.
void analyze_dependencies(const Proof& proof, std::set<std::string>& def_deps,
                          std::set<std::string>& decl_deps);

// Forms a collection; every function defined, every statement proved,
// carrier defined. Throws E-INCOMPLETE, E-CARRIER, plus flatten errors.
CollectionInfo make_collection(const CollectionDecl& decl, const Env& env);

// Interface view: signature and statement names with types/formulas.
struct InterfaceEntry {
  std::string name;
  MethodEntry::Kind kind;
  TypePtr type;        // Function
  FormulaPtr formula;  // Statement / LogicalDef
};
std::vector<InterfaceEntry> interface_of(const FlatSpecies& flat);

// deps edges `name -> def:dep` / `name -> decl:dep`, sorted and unique.
std::vector<std::string> dependency_edges(const FlatSpecies& flat);

}  // namespace fcl
