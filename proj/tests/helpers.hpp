#pragma once

#include <string>
#include <vector>

#include "fmcorr/frame.hpp"

namespace fmcorr::testing {

inline FMFrame frame(const std::vector<std::string>& names, const std::vector<std::pair<World, World>>& leq1,
                     const std::vector<std::pair<World, World>>& leq2,
                     const std::vector<std::pair<World, World>>& access) {
  return FMFrame::from_generators(names, leq1, leq2, access);
}

inline WorldSet set_of(std::initializer_list<World> ws) {
  WorldSet s;
  for (World w : ws) s = s.with(w);
  return s;
}

}  // namespace fmcorr::testing
