#include "fmcorr/frame.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fmcorr/algebra.hpp"

namespace fmcorr {

Relation Relation::identity(int n) {
  Relation r(n);
  for (World w = 0; w < n; ++w) r.add(w, w);
  return r;
}

WorldSet Relation::predecessors(World b) const {
  WorldSet out;
  for (World a = 0; a < size(); ++a)
    if (holds(a, b)) out = out.with(a);
  return out;
}

bool Relation::subset_of(const Relation& o) const {
  for (World a = 0; a < size(); ++a)
    if (!rows_[a].subset_of(o.rows_[a])) return false;
  return true;
}

bool Relation::is_reflexive() const {
  for (World a = 0; a < size(); ++a)
    if (!holds(a, a)) return false;
  return true;
}

bool Relation::is_transitive() const {
  for (World a = 0; a < size(); ++a) {
    WorldSet reach;
    rows_[a].for_each([&](World b) { reach |= rows_[b]; });
    if (!reach.subset_of(rows_[a])) return false;
  }
  return true;
}

bool Relation::is_antisymmetric() const {
  for (World a = 0; a < size(); ++a)
    for (World b = a + 1; b < size(); ++b)
      if (holds(a, b) && holds(b, a)) return false;
  return true;
}

Relation Relation::reflexive_transitive_closure() const {
  Relation r = *this;
  for (World a = 0; a < size(); ++a) r.add(a, a);
  for (World k = 0; k < size(); ++k)
    for (World a = 0; a < size(); ++a)
      if (r.holds(a, k)) r.rows_[a] |= r.rows_[k];
  return r;
}

std::vector<std::pair<World, World>> Relation::pairs() const {
  std::vector<std::pair<World, World>> out;
  for (World a = 0; a < size(); ++a) rows_[a].for_each([&](World b) { out.emplace_back(a, b); });
  return out;
}

FMFrame::FMFrame(Relation leq1, Relation leq2, Relation access, std::vector<std::string> names)
    : n_(leq1.size()),
      leq1_(std::move(leq1)),
      leq2_(std::move(leq2)),
      access_(std::move(access)),
      names_(std::move(names)) {
  if (n_ < 1 || n_ > kMaxWorlds)
    throw FrameError("frame must have between 1 and " + std::to_string(kMaxWorlds) + " worlds");
  if (leq2_.size() != n_ || access_.size() != n_) throw FrameError("relation sizes disagree");
  if (names_.empty()) {
    for (World w = 0; w < n_; ++w) names_.push_back(std::string(1, static_cast<char>('a' + w % 26)) +
                                                    (w >= 26 ? std::to_string(w / 26) : ""));
  }
  if (static_cast<int>(names_.size()) != n_) throw FrameError("world name count disagrees");
  if (!leq1_.is_reflexive()) throw FrameError("leq1 is not reflexive");
  if (!leq1_.is_transitive()) throw FrameError("leq1 is not transitive");
  if (!leq1_.is_antisymmetric()) throw FrameError("leq1 is not antisymmetric");
  if (!leq2_.is_reflexive()) throw FrameError("leq2 is not reflexive");
  if (!leq2_.is_transitive()) throw FrameError("leq2 is not transitive");
  if (!leq2_.is_antisymmetric()) throw FrameError("leq2 is not antisymmetric");
  if (!leq2_.subset_of(leq1_)) throw FrameError("leq2 is not contained in leq1");
  down1_.resize(n_);
  preimage_.resize(n_);
  for (World w = 0; w < n_; ++w) {
    down1_[w] = leq1_.predecessors(w);
    preimage_[w] = access_.predecessors(w);
  }
}

FMFrame FMFrame::from_generators(const std::vector<std::string>& names,
                                 const std::vector<std::pair<World, World>>& leq1,
                                 const std::vector<std::pair<World, World>>& leq2,
                                 const std::vector<std::pair<World, World>>& access) {
  const int n = static_cast<int>(names.size());
  if (n < 1 || n > kMaxWorlds)
    throw FrameError("frame must have between 1 and " + std::to_string(kMaxWorlds) + " worlds");
  Relation l1(n), l2(n), r(n);
  for (auto [a, b] : leq1) l1.add(a, b);
  for (auto [a, b] : leq2) l2.add(a, b);
  for (auto [a, b] : access) r.add(a, b);
  return FMFrame(l1.reflexive_transitive_closure(), l2.reflexive_transitive_closure(), r, names);
}

std::string FMFrame::describe() const {
  auto rel = [&](const Relation& r, bool skip_reflexive) {
    std::string s = "{";
    bool first = true;
    for (auto [a, b] : r.pairs()) {
      if (skip_reflexive && a == b) continue;
      if (!first) s += ",";
      s += "(" + names_[a] + "," + names_[b] + ")";
      first = false;
    }
    return s + "}";
  };
  std::string s = "worlds={";
  for (World w = 0; w < n_; ++w) s += (w ? "," : "") + names_[w];
  return s + "} leq1=" + rel(leq1_, true) + " leq2=" + rel(leq2_, true) + " R=" + rel(access_, false);
}

FMFrame parse_frame_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FrameError(std::string("malformed frame JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("worlds") || !j["worlds"].is_array())
    throw FrameError("frame JSON needs a \"worlds\" array");
  std::vector<std::string> names;
  std::map<std::string, World> index;
  for (const auto& w : j["worlds"]) {
    if (!w.is_string()) throw FrameError("world names must be strings");
    auto name = w.get<std::string>();
    if (index.contains(name)) throw FrameError("duplicate world name '" + name + "'");
    index[name] = static_cast<World>(names.size());
    names.push_back(name);
  }
  auto pairs = [&](const char* key) {
    std::vector<std::pair<World, World>> out;
    if (!j.contains(key)) return out;
    if (!j[key].is_array()) throw FrameError(std::string("\"") + key + "\" must be an array of pairs");
    for (const auto& p : j[key]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
        throw FrameError(std::string("\"") + key + "\" entries must be [world, world]");
      auto a = p[0].get<std::string>(), b = p[1].get<std::string>();
      if (!index.contains(a) || !index.contains(b))
        throw FrameError(std::string("unknown world in \"") + key + "\": " + p.dump());
      out.emplace_back(index[a], index[b]);
    }
    return out;
  };
  FMFrame frame = FMFrame::from_generators(names, pairs("leq1"), pairs("leq2"), pairs("R"));
  if (!check_admissible(frame)) throw FrameError("R is not admissible: box does not preserve RO12 sets");
  return frame;
}

FMFrame load_frame_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FrameError("cannot open frame file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_frame_json(ss.str());
}

std::string frame_to_json(const FMFrame& f) {
  nlohmann::json j;
  j["worlds"] = f.names();
  auto dump = [&](const Relation& r, bool skip_reflexive) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto [a, b] : r.pairs())
      if (!(skip_reflexive && a == b)) arr.push_back({f.name(a), f.name(b)});
    return arr;
  };
  j["leq1"] = dump(f.leq1(), true);
  j["leq2"] = dump(f.leq2(), true);
  j["R"] = dump(f.access(), false);
  return j.dump();
}

}  // namespace fmcorr
