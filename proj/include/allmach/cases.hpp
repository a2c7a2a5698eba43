#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "allmach/config.hpp"
#include "allmach/grid.hpp"

namespace allmach {

/// Mesh with boundary conditions plus the initial primitive field.
struct CaseSetup {
  StructuredGrid grid;
  std::vector<PrimitiveState> initial;
};

struct CaseInfo {
  std::string name;
  std::string description;
  std::function<CaseConfig()> defaults;
  std::function<CaseSetup(const CaseConfig&)> build;
};

/// Registered cases, in registration order. Built-in cases: uniform_low_mach,
/// cylinder, blunt_body, rmi, khi, riemann.
const std::vector<CaseInfo>& case_registry();
/// Adds or replaces a case by name.
void register_case(CaseInfo info);
/// Throws ConfigError for unknown names.
const CaseInfo& find_case(std::string_view name);

/// Mesh from a grid spec (no boundary conditions set).
StructuredGrid build_grid(const GridSpec& spec);

/// Reproducible noise in [-amplitude, amplitude] for (seed, cell, component).
double cell_noise(std::uint64_t seed, std::size_t cell, int component, double amplitude);

/// Validates the config and builds the case it names.
CaseSetup build_case(const CaseConfig& cfg);

}  // namespace allmach
