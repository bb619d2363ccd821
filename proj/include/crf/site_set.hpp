#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace crf {

// A set of site indices (0-based), stored as a bitmask. Identity is purely
// set-based: ordering of members never matters.
struct SiteSet {
  std::uint32_t bits = 0;

  constexpr SiteSet() = default;
  constexpr explicit SiteSet(std::uint32_t b) : bits(b) {}

  static SiteSet of(std::initializer_list<int> sites) {
    SiteSet s;
    for (int i : sites) s.bits |= (1u << i);
    return s;
  }
  static constexpr SiteSet full(int n) {
    return SiteSet((n >= 32) ? ~0u : ((1u << n) - 1u));
  }

  bool contains(int site) const { return (bits >> site) & 1u; }
  int size() const { return std::popcount(bits); }
  bool empty() const { return bits == 0; }
  bool subset_of(SiteSet other) const { return (bits & ~other.bits) == 0; }
  SiteSet with(int site) const { return SiteSet(bits | (1u << site)); }
  SiteSet without(int site) const { return SiteSet(bits & ~(1u << site)); }
  SiteSet operator|(SiteSet o) const { return SiteSet(bits | o.bits); }
  SiteSet operator&(SiteSet o) const { return SiteSet(bits & o.bits); }
  SiteSet minus(SiteSet o) const { return SiteSet(bits & ~o.bits); }

  bool operator==(const SiteSet&) const = default;

  // Ascending member list.
  std::vector<int> members() const {
    std::vector<int> out;
    for (std::uint32_t b = bits; b; b &= b - 1)
      out.push_back(std::countr_zero(b));
    return out;
  }

  int lowest() const { return std::countr_zero(bits); }
};

// Canonical family order: by size, then lexicographically on the ascending
// member list (which coincides with numeric mask order within one size).
inline bool canonical_less(SiteSet a, SiteSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.bits < b.bits;
}

// Visits every subset of `universe`, from the empty set up to the universe
// itself, in an order unrelated to canonical order.
template <typename F>
void for_each_subset(SiteSet universe, F&& visit) {
  std::uint32_t u = universe.bits;
  std::uint32_t sub = 0;
  while (true) {
    visit(SiteSet(sub));
    if (sub == u) break;
    sub = (sub - u) & u;  // next subset in increasing numeric order
  }
}

}  // namespace crf
