#pragma once

#include <string>
#include <vector>

#include "dehn/sphere_complex.hpp"

namespace dehn {

// a static picture of one sphere complex: the largest boundary cycle is laid
// out on a circle, every other vertex sits at the mean of its neighbours
std::string sphere_svg(const SphereComplex& sc, const std::string& title);

// several spheres side by side
std::string spheres_svg(const std::vector<SphereComplex>& balls, const std::string& title);

}  // namespace dehn
