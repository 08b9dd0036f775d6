#ifndef TCS_TYPES_HPP
#define TCS_TYPES_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace tcs {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Timestamp = std::uint32_t;
using Delta = std::uint32_t;
// Temporal-triangle counts and supports; products of list lengths overflow 32 bits quickly.
using Count = std::uint64_t;

inline constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Canonical identity of a static triangle, a < b < c.
struct TriangleKey {
  VertexId a = 0, b = 0, c = 0;
  friend auto operator<=>(const TriangleKey&, const TriangleKey&) = default;
};

struct TriangleKeyHash {
  std::size_t operator()(const TriangleKey& k) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::uint64_t x : {std::uint64_t(k.a), std::uint64_t(k.b), std::uint64_t(k.c)}) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xbf58476d1ce4e5b9ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

/// How two triangles may be chained when building a community.
enum class Connectivity {
  paper,        // triangles sharing a vertex or an edge are adjacent
  strict_edge,  // triangles must share an edge
};

inline const char* to_string(Connectivity c) {
  return c == Connectivity::paper ? "paper" : "strict-edge";
}

}  // namespace tcs

#endif  // TCS_TYPES_HPP
