#pragma once

#include "levi6/distribution.hpp"

namespace levi6 {

struct PdeInputError : Levi6Error {
    using Levi6Error::Levi6Error;
};

// First-order system in solved form: two distinct jet variables from
// {u_x, u_y, v_x, v_y} (aliases p, q, r, s accepted) expressed in the
// remaining 6 coordinates.
struct SolvedSystem {
    std::array<std::string, 2> solved;
    std::array<std::string, 2> rhs;
    int orientation = +1;
};

// Chart (x, y, u, v, j1, j2) with the unsolved jet variables as j1, j2;
// frame {D_x, D_y, d/dj1, d/dj2}, complement {d/du, d/dv}.
Structure6 build_jet_structure(const SolvedSystem& sys);

// Pairings of the two pulled-back contact forms with the four frame
// fields; all eight must vanish identically.
std::array<Expr, 8> contact_form_pairings(const SolvedSystem& sys);

}  // namespace levi6
