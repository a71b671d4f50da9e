#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fmcorr {

using World = int;

// Subset of a frame's worlds; bit w is world w.
class WorldSet {
 public:
  constexpr WorldSet() = default;
  constexpr explicit WorldSet(std::uint32_t bits) : bits_(bits) {}
  static constexpr WorldSet singleton(World w) { return WorldSet(std::uint32_t{1} << w); }
  static constexpr WorldSet full(int n) {
    return WorldSet(n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1);
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(World w) const { return (bits_ >> w) & 1U; }
  constexpr bool subset_of(WorldSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(WorldSet o) const { return (bits_ & o.bits_) != 0; }
  int size() const { return std::popcount(bits_); }

  constexpr WorldSet operator|(WorldSet o) const { return WorldSet(bits_ | o.bits_); }
  constexpr WorldSet operator&(WorldSet o) const { return WorldSet(bits_ & o.bits_); }
  constexpr WorldSet minus(WorldSet o) const { return WorldSet(bits_ & ~o.bits_); }
  constexpr WorldSet& operator|=(WorldSet o) { bits_ |= o.bits_; return *this; }
  constexpr WorldSet& operator&=(WorldSet o) { bits_ &= o.bits_; return *this; }
  constexpr WorldSet with(World w) const { return WorldSet(bits_ | (std::uint32_t{1} << w)); }

  friend constexpr bool operator==(WorldSet, WorldSet) = default;
  friend constexpr bool operator<(WorldSet a, WorldSet b) { return a.bits_ < b.bits_; }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::uint32_t b = bits_; b; b &= b - 1) fn(static_cast<World>(std::countr_zero(b)));
  }

 private:
  std::uint32_t bits_ = 0;
};

class FrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Square boolean relation, stored as successor rows.
class Relation {
 public:
  Relation() = default;
  explicit Relation(int n) : rows_(static_cast<std::size_t>(n)) {}
  static Relation identity(int n);

  int size() const { return static_cast<int>(rows_.size()); }
  bool holds(World a, World b) const { return rows_[a].contains(b); }
  void add(World a, World b) { rows_[a] = rows_[a].with(b); }
  // { b | a R b }
  WorldSet successors(World a) const { return rows_[a]; }
  // { a | a R b }
  WorldSet predecessors(World b) const;
  bool subset_of(const Relation& o) const;
  bool is_reflexive() const;
  bool is_transitive() const;
  bool is_antisymmetric() const;
  Relation reflexive_transitive_closure() const;
  std::vector<std::pair<World, World>> pairs() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::vector<WorldSet> rows_;
};

inline constexpr int kMaxWorlds = 20;

/// Finite modal FM frame: two partial orders leq2 ⊆ leq1 and an accessibility
/// relation. Construction checks the order axioms; admissibility of R depends
/// on the RO12 family and is checked by check_admissible.
class FMFrame {
 public:
  FMFrame(Relation leq1, Relation leq2, Relation access, std::vector<std::string> names = {});

  /// Closes generator pairs reflexively and transitively before validating.
  static FMFrame from_generators(const std::vector<std::string>& names,
                                 const std::vector<std::pair<World, World>>& leq1,
                                 const std::vector<std::pair<World, World>>& leq2,
                                 const std::vector<std::pair<World, World>>& access);

  int size() const { return n_; }
  WorldSet all() const { return WorldSet::full(n_); }
  const std::string& name(World w) const { return names_[w]; }
  const std::vector<std::string>& names() const { return names_; }

  const Relation& leq1() const { return leq1_; }
  const Relation& leq2() const { return leq2_; }
  const Relation& access() const { return access_; }

  WorldSet up1(World w) const { return leq1_.successors(w); }
  WorldSet up2(World w) const { return leq2_.successors(w); }
  WorldSet down1(World w) const { return down1_[w]; }
  // R[w]
  WorldSet image(World w) const { return access_.successors(w); }
  // R^{-1}[w]
  WorldSet preimage(World w) const { return preimage_[w]; }

  std::string describe() const;

 private:
  int n_;
  Relation leq1_, leq2_, access_;
  std::vector<WorldSet> down1_, preimage_;
  std::vector<std::string> names_;
};

// JSON frame file: {"worlds": [...], "leq1": [[a,b],...], "leq2": [...], "R": [...]}.
// Order pairs are generators; the loader closes them, validates the axioms and admissibility.
FMFrame parse_frame_json(const std::string& text);
FMFrame load_frame_file(const std::string& path);
std::string frame_to_json(const FMFrame& f);

}  // namespace fmcorr
