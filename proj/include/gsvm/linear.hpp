#pragma once

#include "gsvm/types.hpp"

namespace gsvm {

// <w, x> + b
double decision_value(const Hyperplane& h, const Vector& x);

// Sign of the decision value; the boundary f(x) = 0 is assigned to the
// positive class.
int classify(const Hyperplane& h, const Vector& x);

// y * (<w, x> + b); strictly positive iff the point is classified correctly
// with margin.
double functional_margin(const Hyperplane& h, const LabeledPoint& p);

// Per-point functional and geometric margins over a dataset. Requires w != 0.
MarginReport margin_report(const Hyperplane& h, const DataSet& ds);

}  // namespace gsvm
