#pragma once

// The two worked three-generator quantum exterior algebras, a = (2,2,2),
// parameterized by a nonzero scalar b:
//   symmetric: q = [[1, b, 1/b], [1/b, 1, b], [b, 1/b, 1]], pi = (2 3), c = (1, 1, 1)
//   twisted:   q = [[1, b, 1/b], [1/b, 1, -b], [b, -1/b, 1]], pi = (2 3),
//              c = (-1, i, i) with i a square root of -1 in the field

#include "qci/builder.hpp"

namespace qci {

enum class ReferenceExample { Symmetric, Twisted };

/// Throws DivisionByZero for b = 0.
Presentation reference_presentation(ReferenceExample which, const Scalar& b);

/// Throws NotInField for the twisted example when the field lacks sqrt(-1).
Witness reference_witness(ReferenceExample which, const Presentation& p);

BfaStructure reference_structure(ReferenceExample which, const Scalar& b);

}  // namespace qci
