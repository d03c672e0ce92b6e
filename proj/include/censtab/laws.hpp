#ifndef CENSTAB_LAWS_HPP
#define CENSTAB_LAWS_HPP

#include <censtab/category.hpp>

#include <cstdint>
#include <string>

namespace censtab {

struct LawReport {
  bool ok = true;
  std::string detail;  // first violation, empty when ok
  std::int64_t pairs_checked = 0;
  std::int64_t triples_checked = 0;
};

// Exhaustively verifies, for all objects up to max_degree (clamped to the
// object range of a presented category), that composites of canonical
// morphisms are canonical members of their hom set, that identities are
// neutral, and that composition is associative on every composable triple.
LawReport check_category_laws(const Category& cat, int max_degree);

}  // namespace censtab

#endif
