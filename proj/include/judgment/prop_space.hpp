#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "judgment/error.hpp"

namespace judgment {

using WorldIndex = std::uint32_t;

inline constexpr std::size_t kMaxAtoms = 24;

/// The 2^n truth assignments over an ordered list of atoms. World k assigns
/// atom i the value of bit i of k.
class WorldSpace {
 public:
  const std::vector<std::string>& atoms() const { return atoms_; }
  std::size_t atom_count() const { return atoms_.size(); }
  WorldIndex world_count() const { return WorldIndex{1} << atoms_.size(); }

  std::optional<std::size_t> index_of(std::string_view name) const {
    auto it = std::find(atoms_.begin(), atoms_.end(), name);
    if (it == atoms_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - atoms_.begin());
  }

  bool holds(WorldIndex world, std::size_t atom) const { return (world >> atom) & 1U; }

  friend bool operator==(const WorldSpace& a, const WorldSpace& b) { return a.atoms_ == b.atoms_; }

 private:
  explicit WorldSpace(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {}
  std::vector<std::string> atoms_;

  friend std::shared_ptr<const WorldSpace> build_space(std::vector<std::string>);
};

using SpacePtr = std::shared_ptr<const WorldSpace>;

inline bool is_identifier(std::string_view name) {
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (name.empty() || !alpha(name.front())) return false;
  return std::all_of(name.begin(), name.end(), [&](char c) { return alpha(c) || digit(c); });
}

inline bool is_reserved_word(std::string_view name) { return name == "true" || name == "false"; }

inline SpacePtr build_space(std::vector<std::string> atoms) {
  if (atoms.empty()) fail(ErrorKind::EmptyAtomList, "a world space needs at least one atom");
  if (atoms.size() > kMaxAtoms)
    fail(ErrorKind::TooManyAtoms,
         std::to_string(atoms.size()) + " atoms exceeds the limit of " + std::to_string(kMaxAtoms));
  std::unordered_set<std::string> seen;
  for (const auto& name : atoms) {
    if (!is_identifier(name) || is_reserved_word(name))
      fail(ErrorKind::InvalidAtomName, "invalid atom name '" + name + "'");
    if (!seen.insert(name).second) fail(ErrorKind::DuplicateAtom, "duplicate atom '" + name + "'");
  }
  return SpacePtr(new WorldSpace(std::move(atoms)));
}

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_space(const SpacePtr& a, const SpacePtr& b) {
  if (!same_space(a, b)) fail(ErrorKind::SpaceMismatch, "propositions belong to different world spaces");
}

/// A set of worlds of one space.
class Proposition {
 public:
  static Proposition bottom(SpacePtr space) { return Proposition(std::move(space)); }

  static Proposition top(SpacePtr space) {
    Proposition p(std::move(space));
    for (WorldIndex w = 0; w < p.space_->world_count(); ++w) p.insert(w);
    return p;
  }

  static Proposition atom(SpacePtr space, std::string_view name) {
    auto index = space->index_of(name);
    if (!index) fail(ErrorKind::UnknownAtom, "unknown atom '" + std::string(name) + "'");
    return where(std::move(space), [i = *index](WorldIndex w) { return ((w >> i) & 1U) != 0; });
  }

  template <typename Predicate>
  static Proposition where(SpacePtr space, Predicate&& pred) {
    Proposition p(std::move(space));
    for (WorldIndex w = 0; w < p.space_->world_count(); ++w)
      if (pred(w)) p.insert(w);
    return p;
  }

  static Proposition of_worlds(SpacePtr space, std::span<const WorldIndex> worlds) {
    Proposition p(std::move(space));
    for (WorldIndex w : worlds) {
      if (w >= p.space_->world_count())
        fail(ErrorKind::UnknownWorld, "world " + std::to_string(w) + " is outside the space");
      p.insert(w);
    }
    return p;
  }

  const SpacePtr& space() const { return space_; }

  bool contains(WorldIndex w) const { return (bits_[w >> 6] >> (w & 63)) & 1U; }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto word : bits_) n += static_cast<std::size_t>(std::popcount(word));
    return n;
  }

  bool empty() const {
    return std::all_of(bits_.begin(), bits_.end(), [](auto word) { return word == 0; });
  }

  std::vector<WorldIndex> worlds() const {
    std::vector<WorldIndex> out;
    for (WorldIndex w = 0; w < space_->world_count(); ++w)
      if (contains(w)) out.push_back(w);
    return out;
  }

  Proposition operator~() const {
    Proposition p(space_);
    for (std::size_t i = 0; i < bits_.size(); ++i) p.bits_[i] = ~bits_[i];
    p.mask_tail();
    return p;
  }

  friend Proposition operator&(const Proposition& a, const Proposition& b) {
    require_same_space(a.space_, b.space_);
    Proposition p(a.space_);
    for (std::size_t i = 0; i < a.bits_.size(); ++i) p.bits_[i] = a.bits_[i] & b.bits_[i];
    return p;
  }

  friend Proposition operator|(const Proposition& a, const Proposition& b) {
    require_same_space(a.space_, b.space_);
    Proposition p(a.space_);
    for (std::size_t i = 0; i < a.bits_.size(); ++i) p.bits_[i] = a.bits_[i] | b.bits_[i];
    return p;
  }

  friend bool operator==(const Proposition& a, const Proposition& b) {
    return same_space(a.space_, b.space_) && a.bits_ == b.bits_;
  }

 private:
  explicit Proposition(SpacePtr space)
      : space_(std::move(space)), bits_((space_->world_count() + 63) / 64, 0) {}

  void insert(WorldIndex w) { bits_[w >> 6] |= std::uint64_t{1} << (w & 63); }

  void mask_tail() {
    const WorldIndex n = space_->world_count();
    if (n % 64 != 0) bits_.back() &= (std::uint64_t{1} << (n % 64)) - 1;
  }

  SpacePtr space_;
  std::vector<std::uint64_t> bits_;
};

/// Material conditional as a world set: ~p | q.
inline Proposition material(const Proposition& p, const Proposition& q) { return ~p | q; }

inline bool entails(const Proposition& p, const Proposition& q) {
  require_same_space(p.space(), q.space());
  return (p & ~q).empty();
}

/// True when `inner` lists the same atoms as the first atoms of `outer`.
inline bool is_prefix_space(const WorldSpace& inner, const WorldSpace& outer) {
  const auto& a = inner.atoms();
  const auto& b = outer.atoms();
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

/// Re-expresses p over a space that extends p's space with extra trailing atoms.
inline Proposition lift(const Proposition& p, const SpacePtr& extended) {
  if (!is_prefix_space(*p.space(), *extended))
    fail(ErrorKind::SpaceMismatch, "target space does not extend the proposition's space");
  const WorldIndex mask = p.space()->world_count() - 1;
  return Proposition::where(extended, [&](WorldIndex w) { return p.contains(w & mask); });
}

}  // namespace judgment
