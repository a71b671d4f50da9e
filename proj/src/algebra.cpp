#include "fmcorr/algebra.hpp"

namespace fmcorr {

WorldSet upset1(const FMFrame& f, WorldSet y) {
  WorldSet out;
  y.for_each([&](World w) { out |= f.up1(w); });
  return out;
}

WorldSet interior1(const FMFrame& f, WorldSet y) {
  WorldSet out;
  for (World w = 0; w < f.size(); ++w)
    if (f.up1(w).subset_of(y)) out = out.with(w);
  return out;
}

WorldSet closure2(const FMFrame& f, WorldSet y) {
  WorldSet out;
  for (World w = 0; w < f.size(); ++w)
    if (f.up2(w).intersects(y)) out = out.with(w);
  return out;
}

WorldSet nucleus12(const FMFrame& f, WorldSet y) { return interior1(f, closure2(f, y)); }

WorldSet box_k(const FMFrame& f, WorldSet y) {
  WorldSet out;
  for (World w = 0; w < f.size(); ++w)
    if (f.image(w).subset_of(y)) out = out.with(w);
  return out;
}

WorldSet image_k(const FMFrame& f, WorldSet y) {
  WorldSet out;
  y.for_each([&](World w) { out |= f.image(w); });
  return out;
}

ROAlgebra::ROAlgebra(FMFrame frame) : frame_(std::move(frame)) {
  const std::uint32_t subsets = std::uint32_t{1} << frame_.size();
  member_.assign(subsets, false);
  for (std::uint32_t bits = 0; bits < subsets; ++bits) {
    WorldSet y(bits);
    if (upset1(frame_, y) != y) continue;
    if (nucleus12(frame_, y) == y) {
      carrier_.push_back(y);
      member_[bits] = true;
    }
  }
  if (frame_.size() <= kTableWorlds) {
    for (std::uint32_t bits = 0; bits < subsets; ++bits) {
      const WorldSet y(bits);
      nucleus_.push_back(nucleus12(frame_, y));
      interior_.push_back(interior1(frame_, y));
      box_.push_back(box_k(frame_, y));
      closure_.push_back(nucleus12(frame_, upset1(frame_, y)));
    }
    for (std::uint32_t bits = 0; bits < subsets; ++bits)
      diamond_.push_back(closure_[image_k(frame_, WorldSet(bits)).bits()]);
  }
  for (World w = 0; w < frame_.size(); ++w) nominal_.push_back(closure(WorldSet::singleton(w)));
  // Computed, not assumed: the nucleus need not be dense in general.
  bottom_ = nucleus12(frame_, WorldSet{});
}

bool ROAlgebra::admissible() const {
  for (WorldSet y : carrier_)
    if (!contains(box(y))) return false;
  return true;
}

ROAlgebra compute_ro12(const FMFrame& f) { return ROAlgebra(f); }

bool check_admissible(const FMFrame& f) { return ROAlgebra(f).admissible(); }

}  // namespace fmcorr
