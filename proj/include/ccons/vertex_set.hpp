#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace ccons {

/// Hard upper bound on the number of vertices any component accepts.
/// Pair states pack two vertex masks into one 64-bit key.
inline constexpr int kMaxVertices = 32;

/// A subset of {0, ..., n-1} stored as a bitmask.
class VertexSet {
 public:
  using Mask = std::uint64_t;

  constexpr VertexSet() = default;
  constexpr explicit VertexSet(Mask bits) : bits_(bits) {}

  static constexpr VertexSet single(int v) { return VertexSet(Mask{1} << v); }
  static constexpr VertexSet full(int n) {
    return VertexSet(n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1);
  }
  static VertexSet of(const std::vector<int>& members) {
    VertexSet s;
    for (int v : members) s.insert(v);
    return s;
  }

  constexpr Mask bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int v) const { return (bits_ >> v) & 1U; }
  constexpr void insert(int v) { bits_ |= Mask{1} << v; }
  constexpr void erase(int v) { bits_ &= ~(Mask{1} << v); }

  constexpr bool subset_of(VertexSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool disjoint(VertexSet other) const {
    return (bits_ & other.bits_) == 0;
  }
  /// Smallest member, or -1 when empty.
  constexpr int first() const {
    return bits_ == 0 ? -1 : std::countr_zero(bits_);
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Mask b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  constexpr VertexSet operator|(VertexSet o) const { return VertexSet(bits_ | o.bits_); }
  constexpr VertexSet operator&(VertexSet o) const { return VertexSet(bits_ & o.bits_); }
  constexpr VertexSet& operator|=(VertexSet o) { bits_ |= o.bits_; return *this; }
  constexpr bool operator==(const VertexSet&) const = default;

 private:
  Mask bits_ = 0;
};

}  // namespace ccons
