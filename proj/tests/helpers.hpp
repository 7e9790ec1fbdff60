#pragma once

#include <initializer_list>
#include <tuple>

#include "log_series.hpp"

namespace phx::test {

struct Term {
    int i, j;
    Q c;
};

// Radial (dim 0) series from (i, j, c) triples.
inline LogSeries radial(std::initializer_list<Term> terms, int order = kExact)
{
    LogSeries s(0, order);
    for (const auto& t : terms) s.add(t.i, t.j, TangentialPoly::constant(0, s.cap(t.i), t.c));
    return s;
}

inline Q rc(const LogSeries& s, int i, int j) { return s.coeff(i, j).constant_term(); }

}  // namespace phx::test
