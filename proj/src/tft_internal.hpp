#pragma once

#include "hft/tft.hpp"

namespace hft::detail {

// Columns span the relations x.r (x) y - x (x) r.y of X_g (x) Y_h over R_e,
// where R is the right algebra of X and the left algebra of Y.
Matrix balancing_over_identity(const GradedBimodule& x, int g, const GradedBimodule& y, int h);

// Word text helpers used by the relation suite and the surface builders.
std::string lbl(const GroupTable& G, std::initializer_list<int> labels);

}  // namespace hft::detail
