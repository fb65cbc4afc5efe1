#pragma once

#include "fcl/species.hpp"

namespace fcl {

// Elaborates every method of the flat species: infers unannotated parameter
// types by unification, checks bodies against signatures, resolves `X!m`
// against parameter interfaces, and requires formula atoms to be bool.
// Fills MethodEntry::type and MethodEntry::params.
// Throws E-TYPE, E-UNBOUND, E-ARITY.
void typecheck(FlatSpecies& flat, const Env& env);

// Type of expression `e` in a ground context (used by the eval subcommand):
// every free name must be a method of `flat`. Returns the elaborated type.
TypePtr type_of_ground_expr(const ExprPtr& e, const FlatSpecies& flat, const Env& env);

}  // namespace fcl
