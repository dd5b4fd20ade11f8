#pragma once

#include <optional>

#include "qh/pivotal.hpp"

namespace qh {

/// The cyclic quasi-Hopf algebra on k[C_n] over Q(zeta_n) with q = zeta^s:
/// reassociator built from the orthogonal idempotents, S(g) = g^{-1},
/// alpha = g^{-1}, beta = 1. Requires n >= 2 and gcd(s, n) = 1. The returned
/// data has passed the quasi-Hopf and involutory suites.
QuasiHopf cyclic_qha(long n, long s = 1);

struct GroupHopfResult {
    QuasiHopf H;
    std::optional<RMatrix> R;
};

/// The group algebra k[C_n] as a Hopf algebra (trivial reassociator). For
/// n = 2, `with_r` also returns the nontrivial triangular R-matrix
/// (1/2)(1x1 + 1xg + gx1 - gxg), which must pass verify_qt first.
GroupHopfResult group_hopf(long n, bool with_r = false);

struct SweedlerResult {
    QuasiHopf H;
    RMatrix R;
};

/// The 4-dimensional algebra generated by a grouplike g (g^2 = 1) and x
/// (x^2 = 0, gx = -xg) with its standard Hopf structure and one-parameter
/// R-matrix family. The candidate R is validated through verify_qt, never
/// assumed.
SweedlerResult sweedler(const Rat& r_param);

}  // namespace qh
