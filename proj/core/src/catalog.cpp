#include "faultrank/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "faultrank/error.hpp"

namespace faultrank {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(ComponentKind kind) noexcept {
  switch (kind) {
    case ComponentKind::VM: return "VM";
    case ComponentKind::Proxy: return "Proxy";
    case ComponentKind::Runtime: return "Runtime";
    case ComponentKind::Database: return "Database";
    case ComponentKind::Network: return "Network";
    case ComponentKind::Storage: return "Storage";
    case ComponentKind::Other: return "Other";
  }
  return "Other";
}

ComponentKind parse_component_kind(std::string_view label) noexcept {
  const std::string l = lower(label);
  if (l == "vm") return ComponentKind::VM;
  if (l == "proxy") return ComponentKind::Proxy;
  if (l == "runtime") return ComponentKind::Runtime;
  if (l == "database") return ComponentKind::Database;
  if (l == "network") return ComponentKind::Network;
  if (l == "storage") return ComponentKind::Storage;
  return ComponentKind::Other;
}

std::string Component::kind_label() const {
  if (kind == ComponentKind::Other && !other_kind.empty()) return other_kind;
  return std::string(to_string(kind));
}

const Fault* FaultCatalog::find_fault(const FaultId& id) const {
  auto it = fault_index_.find(id);
  return it == fault_index_.end() ? nullptr : &faults_[it->second];
}

const Component* FaultCatalog::find_component(const ComponentId& id) const {
  auto it = component_index_.find(id);
  return it == component_index_.end() ? nullptr : &components_[it->second];
}

std::size_t FaultCatalog::fault_index(const FaultId& id) const {
  auto it = fault_index_.find(id);
  if (it == fault_index_.end())
    throw Error(ErrorCode::UnknownFault, "unknown fault '" + id.str() + "'");
  return it->second;
}

const ComponentId& FaultCatalog::component_of(const FaultId& id) const {
  return faults_[fault_index(id)].component;
}

std::vector<FaultId> FaultCatalog::faults_of(const ComponentId& id) const {
  std::vector<FaultId> out;
  for (const Fault& f : faults_)
    if (f.component == id) out.push_back(f.id);
  return out;
}

FaultCatalog build_catalog(std::vector<Component> components, std::vector<Fault> faults) {
  if (faults.empty())
    throw Error(ErrorCode::EmptyCatalog, "catalog has no faults");

  FaultCatalog catalog;
  std::sort(components.begin(), components.end(),
            [](const Component& a, const Component& b) { return a.id < b.id; });
  std::sort(faults.begin(), faults.end(),
            [](const Fault& a, const Fault& b) { return a.id < b.id; });

  for (std::size_t i = 0; i < components.size(); ++i) {
    const Component& c = components[i];
    if (c.id.empty())
      throw Error(ErrorCode::DuplicateId, "component with empty id");
    if (!catalog.component_index_.emplace(c.id, i).second)
      throw Error(ErrorCode::DuplicateId, "duplicate component id '" + c.id.str() + "'");
  }
  for (std::size_t i = 0; i < faults.size(); ++i) {
    const Fault& f = faults[i];
    if (f.id.empty())
      throw Error(ErrorCode::DuplicateId, "fault with empty id");
    if (!catalog.fault_index_.emplace(f.id, i).second)
      throw Error(ErrorCode::DuplicateId, "duplicate fault id '" + f.id.str() + "'");
    if (!catalog.component_index_.contains(f.component))
      throw Error(ErrorCode::DanglingComponentRef,
                  "fault '" + f.id.str() + "' references unknown component '" +
                      f.component.str() + "'");
    if (f.independent_probability) {
      const double p = *f.independent_probability;
      if (!(p >= 0.0 && p <= 1.0))
        throw Error(ErrorCode::InvalidProbability,
                    "fault '" + f.id.str() + "' has probability outside [0,1]");
    }
  }

  catalog.components_ = std::move(components);
  catalog.faults_ = std::move(faults);
  return catalog;
}

}  // namespace faultrank
