#pragma once

// Bench values the toolkit is checked against.

#include <array>

#include "lvdt/calibration.hpp"
#include "lvdt/classifier.hpp"

namespace lvdt::reference {

/// Series resistance, excitation and measured secondary output.
inline constexpr std::array<Table1Row, 3> kCircuitRows{{
    {6.2, 10.0, 11.0},
    {12.4, 14.0, 8.0},
    {18.6, 16.0, 6.0},
}};

/// Finite-element outputs and their quoted error for the same rows.
inline constexpr std::array<double, 3> kCircuitFemOutputs{11.7, 8.4, 6.8};
inline constexpr std::array<double, 3> kCircuitFemErrorPct{6.3, 5.0, 13.0};

struct ForceCheck {
  double applied_n;
  double calculated_n;
  double error_pct;
};

inline constexpr std::array<ForceCheck, 2> kForceChecks{{
    {2.501, 2.599, 3.9},
    {2.845, 2.972, 4.4},
}};
inline constexpr double kMaxForceErrorPct = 4.4;

inline constexpr double kSpringConstant = 1.3;        // N/mm
inline constexpr double kFemSensitivity = 0.1e-3;     // V/mm
inline constexpr double kIndentationDepth = 1.0;      // mm
inline constexpr double kSpecimenFootprint = 30.0;    // mm
inline constexpr double kSpecimenHeight = 20.0;       // mm

/// Paraffin gel, silicon rubber, polyurethane with nu = 0.45 and a 2 mm tip.
MaterialLibrary materials_library();

Specimen specimen_for(const Material& material, double poisson_ratio);

}  // namespace lvdt::reference
