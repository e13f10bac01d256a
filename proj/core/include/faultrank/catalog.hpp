#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "faultrank/ids.hpp"

namespace faultrank {

enum class ComponentKind { VM, Proxy, Runtime, Database, Network, Storage, Other };

std::string_view to_string(ComponentKind kind) noexcept;

/// Parses a kind label; anything unrecognized maps to Other.
ComponentKind parse_component_kind(std::string_view label) noexcept;

struct Component {
  ComponentId id;
  std::string name;
  ComponentKind kind = ComponentKind::Other;
  /// Label kept for Other kinds (e.g. "pod"); empty otherwise.
  std::string other_kind;

  std::string kind_label() const;

  friend bool operator==(const Component&, const Component&) = default;
};

struct Fault {
  FaultId id;
  ComponentId component;
  /// Probability of the fault arising on its own. Absent when it should be
  /// estimated from a fault log or defaulted.
  std::optional<double> independent_probability;

  friend bool operator==(const Fault&, const Fault&) = default;
};

/// Validated, immutable component/fault listing. Components and faults are
/// stored sorted by id.
class FaultCatalog {
 public:
  std::span<const Component> components() const noexcept { return components_; }
  std::span<const Fault> faults() const noexcept { return faults_; }

  std::size_t component_count() const noexcept { return components_.size(); }
  std::size_t fault_count() const noexcept { return faults_.size(); }

  const Fault* find_fault(const FaultId& id) const;
  const Component* find_component(const ComponentId& id) const;

  /// Index of the fault in faults(); throws UnknownFault.
  std::size_t fault_index(const FaultId& id) const;
  /// Owning component of a fault; throws UnknownFault.
  const ComponentId& component_of(const FaultId& id) const;

  std::vector<FaultId> faults_of(const ComponentId& id) const;

  friend FaultCatalog build_catalog(std::vector<Component> components,
                                    std::vector<Fault> faults);

 private:
  FaultCatalog() = default;

  std::vector<Component> components_;
  std::vector<Fault> faults_;
  std::unordered_map<FaultId, std::size_t> fault_index_;
  std::unordered_map<ComponentId, std::size_t> component_index_;
};

/// Validates and freezes a catalog.
///
/// Throws Error with DuplicateId, DanglingComponentRef, EmptyCatalog, or
/// InvalidProbability (a given probability outside [0,1] or an empty id).
FaultCatalog build_catalog(std::vector<Component> components, std::vector<Fault> faults);

}  // namespace faultrank
