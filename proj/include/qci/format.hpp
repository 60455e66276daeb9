#pragma once

// Human-readable printing of monomials, elements and tensors.

#include <string>
#include <vector>

#include "qci/algebra.hpp"

namespace qci {

/// "1", "x1", "x1x3", "x1^2x2".
std::string monomial_name(const ExpVec& v);

/// "(1,0,1)".
std::string exp_vec_string(const ExpVec& v);

/// Terms in basis order, e.g. "x2 - 2*x1x2 + (1 - z)*x1x3"; "0" when empty.
std::string format_element(const Element& x);
std::string format_tensor(const Tensor& t);
std::string format_functional(const Functional& f);

/// Basis by increasing degree, and within a degree x1... before x2...
std::vector<ExpVec> graded_basis(const Presentation& p);

}  // namespace qci
