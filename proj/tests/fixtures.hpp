#pragma once

#include <cmath>
#include <random>

#include "kmirror/mc.hpp"
#include "kmirror/toric.hpp"

namespace fx {

using namespace kmirror;

inline novikov T(const structure& A, std::size_t pos, const cq& c = cq(1)) {
    return novikov::monomial(A.ctx(), A.mon()->generator(pos), c);
}

inline novikov scalar(const structure& A, const cq& c) { return novikov::constant(A.ctx(), c); }

inline ext_nov e(const structure& A, wedge_index I, const novikov& c) {
    ext_nov x(A.dim());
    x.add(I, c);
    return x;
}

inline ext_nov e(const structure& A, wedge_index I) { return basis_element(A, I); }

inline cq rand_cq(std::mt19937& rng) {
    return cq(frac(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 4) + 1),
              frac(static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 3) + 1));
}

inline double t0() { return std::exp(-1.0); }

} // namespace fx
