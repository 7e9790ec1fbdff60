#pragma once

#include <optional>
#include <string>

#include "expansion.hpp"

namespace phx {

// u = phi + v solves  Delta u - u_i u_j u_ij / (1 + |Du|^2) - n u_t / t = 0,
// boundary graph x_n = phi(x') with phi(0) = 0, D phi(0) = 0.
SingularProblem minimal_graph_problem(int n, const TangentialPoly& phi, int weight);

enum class LNShape { HalfSpace, Ball };

struct LNGeometry {
    int n = 3;
    LNShape shape = LNShape::HalfSpace;
};

// v = t^{(n-2)/2} u - 1 for the Loewner-Nirenberg solution u.  The ball is
// radial only (tangential dimension 0).
SingularProblem loewner_nirenberg_problem(const LNGeometry& geom, int weight);

SingularProblem homogeneous_problem(int m_low, int m_high, int dim, int weight);

// F = forcing0 + planted t^{m_high-2} + quadratic (v/t)^2, no tangential variables.
SingularProblem synthetic_problem(int m_low, int m_high, int weight, const Q& forcing0, const Q& planted,
                                  const Q& quadratic);

struct LNLocalCoeffs {
    Q c1;
    std::optional<Q> c31;  // n = 3 only
};

// c1 = (n-2) H / (4(n-1)),  c31 = -(lapH + 2H(H^2 - K)) / 16.
LNLocalCoeffs ln_local_coeffs(int n, const Q& H, const Q& K, const Q& lapH);

// Round unit sphere read with H = sum and H = mean of principal curvatures,
// next to the coefficients of the exact ball solution.
struct LNConventionAudit {
    LNLocalCoeffs sum, mean;
    Q exact_c1;
    Q exact_c31;
};
LNConventionAudit ln_convention_audit(int n);

// c_{m_high,1}: zero means no log terms through the computed order.
TangentialPoly log_obstruction(const SingularProblem& prob, const TangentialPoly& datum);

// j <= floor((i-1)/n) for every stored t^i (log t)^j.
bool log_caps_hold(const LogSeries& s, int n);

// sum_k a_k |x'|^{2k}, degree <= max_degree.
TangentialPoly radial_poly(int dim, int max_degree, const std::vector<Q>& a);

// sqrt(R^2 - |x'|^2) - R.
TangentialPoly sphere_graph(int dim, const Q& R, int max_degree);

// Shipped problems with their data and, where known, the exact expansion.
struct ProblemInstance {
    SingularProblem prob;
    TangentialPoly datum;
    std::optional<LogSeries> oracle;
    int K = 0;  // t-order of interest; prob.weight = K + tangential degree
};

// Graph of sqrt(R^2 - |x|^2 - y^2) - R over the ball; phi is the boundary sphere.
ProblemInstance hemisphere_instance(int n, const Q& R, int K, int tangential_degree);
// Exact solution (2/(1-|x|^2))^{(n-2)/2}: v = (1 - t/2)^{-(n-2)/2} - 1.
ProblemInstance ln_ball_instance(int n, int K);
ProblemInstance ln_halfspace_instance(int n, int K, int tangential_degree, const TangentialPoly& datum);

LogSeries hemisphere_oracle(int n, const Q& R, int weight);
LogSeries ln_ball_oracle(int n, int weight);

}  // namespace phx
