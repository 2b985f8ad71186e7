#pragma once

#include "homsol/io/document.hpp"

#include <string>
#include <variant>
#include <vector>

namespace homsol::io {

/// A bundled input: an algebra or a construction.
using CatalogEntry = std::variant<AlgebraDocument, ConstructionDocument>;

/// Names of the bundled entries in a fixed order.
const std::vector<std::string>& catalog_names();

/// Throws ParseError for an unknown name.
CatalogEntry catalog_entry(const std::string& name);

Json to_json(const CatalogEntry& entry);
const std::string& entry_name(const CatalogEntry& entry);
const Json& entry_meta(const CatalogEntry& entry);

/// abelian Lie algebra R^n as a nilpotent metric algebra.
AlgebraDocument abelian_document(int n);
/// Real hyperbolic space: R a + R^{n-1} with ad a = I.
AlgebraDocument hyperbolic_document(int n);

}  // namespace homsol::io
