#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tangential_poly.hpp"

namespace phx {

// m! with m! = 1 for m <= 0.
Q factorial(int m);

struct FriedmanConstants {
    Q B1, B0_tilde;
};

// B1 = max{16, 6 A2 B0, 2 A1},  B0~ = A0 B0 (9 A2 + A2^2 B0)(A1^2 + 3 A1 + 16).
FriedmanConstants friedman_constants(const Q& A0, const Q& A1, const Q& A2, const Q& B0);

// Taylor coefficients (t^0..t^p) of Psi1, Psi2 and z.
std::vector<Q> psi1_coeffs(const Q& A1, int p);
std::vector<Q> psi2_coeffs(const Q& A0, const Q& A2, int p);
std::vector<Q> z_coeffs(const Q& B0, const Q& B1, int p);

// Truncated product of two coefficient vectors.
std::vector<Q> truncated_mul(const std::vector<Q>& a, const std::vector<Q>& b, int p);

// a[i][k] for 1 <= i <= k <= p, read off [z]^i = B0^i [t^i + sum a_ik B1^{k-i-1} t^k].
// Rows and columns are indexed from 0; unused entries are 0.
std::vector<std::vector<Q>> z_power_coeffs(int p, const Q& B0, const Q& B1);

// a_ik <= 3^{i-1} / ((k-i+1)(k-i)) for all 1 <= i < k <= p.
struct CoefficientBoundReport {
    bool holds = true;
    int worst_i = 0, worst_k = 0;
    Q worst_ratio;  // max a_ik / bound
};
CoefficientBoundReport verify_coefficient_bound(int p, const Q& B1);

// Phi(x, y) = F(x) G(y) with y = y(x), one variable each.
struct CompositionFamily {
    std::string name;
    Q A0, A1, A2, B0;
    double lo = -0.5, hi = 0.0;  // sample interval for x
    std::function<std::vector<double>(double x, int p)> F;  // Taylor coefficients at x
    std::function<std::vector<double>(double y, int p)> G;
    std::function<std::vector<double>(double x, int p)> y;
};

std::vector<CompositionFamily> composition_families();

struct CompositionRow {
    int p = 0;
    double max_derivative = 0;
    double bound = 0;
    double margin = 0;  // bound / max_derivative
};

struct CompositionReport {
    std::string family;
    FriedmanConstants constants;
    bool hypotheses_hold = true;
    std::string hypothesis_note;
    std::vector<CompositionRow> rows;
    bool holds = true;
};

CompositionReport verify_composition_bound(const CompositionFamily& fam, int p, int samples = 33);

}  // namespace phx
