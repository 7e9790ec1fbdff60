#pragma once

#include <string>
#include <vector>

#include "expansion.hpp"
#include "numeric_validate.hpp"
#include "problems.hpp"

namespace phx {

struct ProblemSpec {
    std::string kind;  // minimal_graph | hemisphere | ln_halfspace | ln_ball | homogeneous | synthetic
    int n = 3;
    int K = 12;
    int tangential_degree = 0;
    Q radius = 1;
    std::string phi;    // "e1,e2:c; ..." in the n-1 tangential variables
    std::string datum;  // coefficient of t^{m_high}
    int m_low = 0, m_high = 4, dim = 0;
    Q forcing0 = 0, planted = 0, quadratic = 0;
};

struct OutputSpec {
    std::string dir = ".";
    std::string series = "series.json";
    std::string trace = "trace.csv";
    std::string grid = "grid.csv";
    std::string slopes = "slopes.csv";
};

struct ValidateSpec {
    GridSpec grid;
    bool richardson = true;
    double fd_tol = 1e-8;
    double slope_tol = 0.2;
    int growth_degree = 10;  // tangential degree of c_2 for the growth fit, 0 = skip
};

struct CurvatureSpec {
    int n = 3;
    std::vector<Q> kappa;  // principal curvatures at the point
    Q lap_H = 0;           // boundary Laplacian of H (sum convention)
};

struct FriedmanSpec {
    Q A0 = 1, A1 = 1, A2 = 1, B0 = 1;
    int coefficient_p = 20;
    int composition_p = 12;
};

struct RunConfig {
    int version = 0;
    std::string command;  // expand | match | iterate | validate | ln-coeffs | friedman
    bool has_problem = false;
    ProblemSpec problem;
    OutputSpec output;
    MajorantConfig majorant;
    ValidateSpec validate;
    CurvatureSpec curvature;
    FriedmanSpec friedman;
};

// Flat "key = value" text with [section] headers; '#' or ';' starts a comment line.
// A non-empty `command` overrides the file's command key.
RunConfig parse_config(const std::string& text, const std::string& command = "");
RunConfig load_config(const std::string& path);

Q parse_rational(const std::string& s);
// "2,0:1/2; 0,2:1/2" -> sum of monomials; a bare "c" is the constant c.
TangentialPoly parse_poly(const std::string& s, int dim, int max_degree);

ProblemInstance build_instance(const ProblemSpec& spec);

}  // namespace phx
