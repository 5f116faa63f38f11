#pragma once

#include <string>
#include <vector>

#include "hopfcyc/symmetries.hpp"

namespace hc::fixtures {

// Q[Z/n] with basis e, g, g2, ..., g^(n-1).
HopfData cyclic_group(int n);
// Sweedler's four-dimensional Hopf algebra with basis 1, g, x, gx.
HopfData sweedler();

// delta(g) = -1 when delta_minus, delta vanishes on x and gx; sigma is 1 or g.
ModularPair sweedler_pair(bool delta_minus, bool sigma_g);
// (eps, g^k) on Q[Z/n].
ModularPair cyclic_pair(int n, int sigma_power);
ModularPair trivial_pair(const HopfData& h);

// Q x Q with Z/2 swapping the two idempotents p, q.
ModuleAlgebra swap_module_algebra();
// Q[t]/(t^2) over the Sweedler algebra: g t = -t, x t = 1, x 1 = 0.
ModuleAlgebra sweedler_dual_numbers();
// Functions on Z/n (idempotents d0..d(n-1)) with g d_j = d_(j+1).
ModuleAlgebra cyclic_functions(int n);
// Q[Z/n] graded by itself: b -> b (x) b.
ComoduleAlgebra group_graded(int n);

// Group algebra of the subgroup of Z/n generated by g^generator_power.
SubHopf cyclic_subgroup(const HopfData& zn, int n, int generator_power);

}  // namespace hc::fixtures
