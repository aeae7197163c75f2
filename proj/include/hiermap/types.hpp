#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace hiermap {

using NodeID = std::uint32_t;
using EdgeID = std::uint64_t;
using NodeWeight = std::int64_t;
using EdgeWeight = std::int64_t;
using BlockID = std::uint32_t;
using CostT = std::int64_t;

constexpr NodeID kInvalidNode = std::numeric_limits<NodeID>::max();
constexpr BlockID kInvalidBlock = std::numeric_limits<BlockID>::max();

// Bad input or configuration (CLI exit code 2). Everything else that throws
// is a runtime error (exit code 1).
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace hiermap
