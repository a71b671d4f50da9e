#pragma once

#include <vector>

#include "fmcorr/frame.hpp"

namespace fmcorr {

// Set operators of the bi-Alexandroff structure. All are total on arbitrary subsets.

// Least leq1-upset containing y.
WorldSet upset1(const FMFrame& f, WorldSet y);
// Largest leq1-upset inside y: { w | up1(w) ⊆ y }.
WorldSet interior1(const FMFrame& f, WorldSet y);
// Closure in the leq2-upset topology: { w | up2(w) ∩ y ≠ ∅ }.
WorldSet closure2(const FMFrame& f, WorldSet y);
// I1 C2, a nucleus on leq1-upsets.
WorldSet nucleus12(const FMFrame& f, WorldSet y);
// { w | R[w] ⊆ y }
WorldSet box_k(const FMFrame& f, WorldSet y);
// R[y]
WorldSet image_k(const FMFrame& f, WorldSet y);

/// The Heyting algebra with operator of refined regular open sets of a frame.
/// Meets are intersections; joins and the black diamond go through the nucleus.
class ROAlgebra {
 public:
  explicit ROAlgebra(FMFrame frame);

  const FMFrame& frame() const { return frame_; }
  const std::vector<WorldSet>& carrier() const { return carrier_; }
  bool contains(WorldSet y) const { return member_[y.bits()]; }

  WorldSet bottom() const { return bottom_; }
  WorldSet top() const { return frame_.all(); }
  WorldSet meet(WorldSet y, WorldSet z) const { return y & z; }
  WorldSet join(WorldSet y, WorldSet z) const {
    const WorldSet u = y | z;
    return tabled() ? nucleus_[u.bits()] : nucleus12(frame_, u);
  }
  WorldSet implies(WorldSet y, WorldSet z) const {
    const WorldSet u = frame_.all().minus(y) | z;
    return tabled() ? interior_[u.bits()] : interior1(frame_, u);
  }
  WorldSet box(WorldSet y) const { return tabled() ? box_[y.bits()] : box_k(frame_, y); }
  // Smallest carrier member containing y: I1 C2 (up1 y).
  WorldSet closure(WorldSet y) const {
    return tabled() ? closure_[y.bits()] : nucleus12(frame_, upset1(frame_, y));
  }
  // Left adjoint of box: c(R[y]).
  WorldSet diamond(WorldSet y) const {
    return tabled() ? diamond_[y.bits()] : closure(image_k(frame_, y));
  }
  // Interpretation of a nominal naming world i.
  WorldSet nominal(World i) const { return nominal_[i]; }

  // Box maps the carrier into itself.
  bool admissible() const;

 private:
  // Operations are looked up in per-subset tables on frames this small.
  static constexpr int kTableWorlds = 12;
  bool tabled() const { return !box_.empty(); }

  FMFrame frame_;
  std::vector<WorldSet> nucleus_, interior_, box_, closure_, diamond_, nominal_;
  std::vector<WorldSet> carrier_;
  std::vector<bool> member_;
  WorldSet bottom_;
};

ROAlgebra compute_ro12(const FMFrame& f);
bool check_admissible(const FMFrame& f);

}  // namespace fmcorr
