#pragma once

#include <vector>

#include "picard/quadfield.hpp"

namespace picard {

enum class ModPSubgroup { Full, P1, P2, Borel };

/// Finite incidence data of the reduction mod p: for split p all points of
/// P^2(F_p) (the reduction is SL_3(F_p)); for inert p the isotropic points
/// of the hermitian form over F_{p^2} (reduction SU(3, F_{p^2})); for
/// ramified p the points of the conic 2 x1 x3 = x2^2 over F_p (reduction
/// SO(3, F_p)). p = 2 is excluded.
struct ModPModel {
  i64 p;
  SplittingType type;
  i64 isotropic_count;
};

inline constexpr i64 kModPDefaultBound = 97;

ModPModel modp_model(const Field& field, i64 p,
                     i64 bound = kModPDefaultBound);

/// Number of isotropic points mod p; equals p^2+p+1, p^3+1, p+1 in the
/// split, inert, ramified cases (the counts are obtained by enumeration,
/// the closed forms are what the tests assert).
i64 modp_isotropic_count(const Field& field, i64 p,
                         i64 bound = kModPDefaultBound);

/// Orbit count of the named subgroup of the mod-p reduction on the
/// isotropic points, by breadth-first closure over subgroup generators.
/// P1 and P2 (the two maximal parabolics between the Borel subgroup and
/// the full group, reduction patterns "last row (0,0,*)" and "first column
/// (*,0,0)") are only valid at split primes.
i64 modp_parabolic_orbits(const Field& field, i64 p, ModPSubgroup sub,
                          i64 bound = kModPDefaultBound);

}  // namespace picard
