#pragma once

#include <vector>

#include "dehn/sphere_complex.hpp"

namespace dehn {

// Cell origins of each inner sphere must refer to cells of outer.
// Zero-handles sit inside zero-handles, every band keeps part of an outer
// band, and no F cell comes from a boundary region.
bool respects(const std::vector<SphereComplex>& inner, const SphereComplex& outer);

// components of F with positive index, as FComponent records
std::vector<FComponent> positive_components(const SphereComplex& sc);

bool is_trivial_modification(const SphereComplex& before, const std::vector<SphereComplex>& after);
// only the disc-with-four-points branch
bool is_final_branch(const SphereComplex& before, const std::vector<SphereComplex>& after);

// balls whose F has a component of positive index
std::vector<int> important_zero_handles(const std::vector<SphereComplex>& balls);

// number of suture arcs (maximal chains of suture edges, closed circles included)
int suture_arc_count(const SphereComplex& sc);

// F together with the sutures forms a connected subset of the sphere
bool f_gamma_connected(const SphereComplex& sc);

// gives every cell the origin list {own index}
void reset_origins(SphereComplex& sc);

}  // namespace dehn
