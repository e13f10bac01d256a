#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <utility>

namespace faultrank {

/// String identifier tagged by the kind of entity it names, so a fault id
/// cannot be passed where a component id is expected.
template <class Tag>
class StrongId {
 public:
  StrongId() = default;
  explicit StrongId(std::string value) : value_(std::move(value)) {}
  explicit StrongId(const char* value) : value_(value) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const StrongId&, const StrongId&) = default;
  friend bool operator==(const StrongId&, const StrongId&) = default;

  friend std::ostream& operator<<(std::ostream& os, const StrongId& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

struct FaultTag {};
struct ComponentTag {};

using FaultId = StrongId<FaultTag>;
using ComponentId = StrongId<ComponentTag>;

}  // namespace faultrank

template <class Tag>
struct std::hash<faultrank::StrongId<Tag>> {
  std::size_t operator()(const faultrank::StrongId<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
