#include "qci/reference_examples.hpp"

#include "qci/error.hpp"

namespace qci {

Presentation reference_presentation(ReferenceExample which, const Scalar& b) {
  const Field& f = b.field();
  const Scalar one = f.one();
  const Scalar binv = b.inverse();
  const Scalar sign = which == ReferenceExample::Twisted ? -one : one;
  RawPresentation raw;
  raw.field = f;
  raw.a = {2, 2, 2};
  raw.q = {{one, b, binv}, {binv, one, sign * b}, {b, sign * binv, one}};
  return validate_presentation(raw);
}

Witness reference_witness(ReferenceExample which, const Presentation& p) {
  const Field& f = p.field();
  Witness w{Permutation::from_images({0, 2, 1}), {}};
  if (which == ReferenceExample::Symmetric) {
    w.c = {f.one(), f.one(), f.one()};
    return w;
  }
  const std::optional<Scalar> i = f.sqrt_minus_one();
  if (!i) throw Error(ErrorCode::NotInField, "the twisted example needs a square root of -1 in " + f.to_string());
  w.c = {-f.one(), *i, *i};
  return w;
}

BfaStructure reference_structure(ReferenceExample which, const Scalar& b) {
  const Presentation p = reference_presentation(which, b);
  const Witness w = reference_witness(which, p);
  return build_structure(p, w.pi, w.c);
}

}  // namespace qci
