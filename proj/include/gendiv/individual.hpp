#pragma once

#include "gendiv/genealogy.hpp"
#include "gendiv/routing.hpp"
#include "gendiv/trash_genes.hpp"

namespace gendiv {

/// One member of the evolving population. `raw_fitness` is computed once at
/// birth since the routing task is deterministic.
struct Individual {
  NodeId node{};
  ActionSequence genome{};
  TrashVector trash;
  double raw_fitness = 0.0;
};

}  // namespace gendiv
