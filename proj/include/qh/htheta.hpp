#pragma once

#include "qh/pivotal.hpp"

namespace qh {

/// The dimension-2d extension H(theta) on basis H + H.theta, where theta is
/// central, theta^2 = u S(u), Delta(theta) = (theta x theta)(R_21 R)^{-1},
/// eps(theta) = 1, S(theta) = theta; reassociator, alpha, beta and R are
/// those of H. theta^{-1} = theta (u S(u))^{-1} is a ribbon element.
struct HTheta {
    QuasiHopf alg;        // dimension 2 * base_dim
    long base_dim = 0;
    Tensor theta;         // rank 1 in the extension
    Tensor u_norm;        // u S(u), lifted
    RMatrix r;            // the lifted R, re-verified
    RibbonCandidate eta;  // theta^{-1}
};

/// Builds the extension and runs the complete verification: quasi-bialgebra
/// and quasi-Hopf axioms, quasitriangularity of the lifted R, the ribbon
/// laws for eta = theta^{-1}, centrality of theta and theta^2 = u S(u).
Report check_h_theta(const QuasiHopf& H, const RMatrix& R, const UElement& U,
                     HTheta* out = nullptr);

/// Throwing variant: ConstructionFailure carrying the first failed identity.
HTheta build_h_theta(const QuasiHopf& H, const RMatrix& R, const UElement& U);

/// Lifts a rank-1 element of H into the plain block of H(theta).
Tensor lift_element(const HTheta& T, const Tensor& v);

}  // namespace qh
