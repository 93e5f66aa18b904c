#include "lvdt/reference_data.hpp"

namespace lvdt::reference {

MaterialLibrary materials_library() {
  MaterialLibrary library;
  library.entries = {
      {"paraffin gel", 0.77},
      {"silicon rubber", 1.07},
      {"polyurethane", 548.0},
  };
  library.poisson_ratio = 0.45;
  library.tip_radius_mm = 2.0;
  return library;
}

Specimen specimen_for(const Material& material, double poisson_ratio) {
  Specimen s;
  s.name = material.name;
  s.youngs_modulus_mpa = material.youngs_modulus_mpa;
  s.poisson_ratio = poisson_ratio;
  s.width_mm = kSpecimenFootprint;
  s.depth_mm = kSpecimenFootprint;
  s.height_mm = kSpecimenHeight;
  return s;
}

}  // namespace lvdt::reference
