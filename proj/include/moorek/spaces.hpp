#pragma once

#include <memory>
#include <string>
#include <vector>

#include "moorek/abelian.hpp"

namespace moorek {

// Abstract syntax for the space catalog. Text syntax:
//   point | S(k) | M(n) | susp(e) | smash(e1,e2) | prod(e1,e2) | MxSM(n)
struct SpaceExpr {
    enum class Kind { Point, Sphere, Moore, Susp, Smash, Prod, MnXSigmaMn };

    Kind kind = Kind::Point;
    Int param = 0;                   // sphere dimension or Moore/MxSM parameter
    std::vector<SpaceExpr> children; // Susp: 1 child; Smash/Prod: 2 children
    // Optional integral-cohomology annotation: H^k for k = 1, 2, ... When
    // set on a node it overrides the derived cohomology of that subspace in
    // the counting machinery.
    std::vector<AbelianGroup> cohomology_annotation;

    static SpaceExpr point();
    static SpaceExpr sphere(Int k);
    static SpaceExpr moore(Int m);
    static SpaceExpr susp(SpaceExpr e);
    static SpaceExpr smash(SpaceExpr a, SpaceExpr b);
    static SpaceExpr prod(SpaceExpr a, SpaceExpr b);
    static SpaceExpr mxsm(Int m);

    std::string to_string() const;
};

// Parses the text syntax; throws input_error with a position-annotated
// message on malformed input.
SpaceExpr parse_space(const std::string& text);

} // namespace moorek
