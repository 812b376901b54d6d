#pragma once

#include "copdyn/dynamics.hpp"

#include <string>

namespace copdyn::models {

struct BuiltSystem {
  AtomicSpace space;
  AtomMap map;
  std::string name;
};

}  // namespace copdyn::models
