#pragma once

#include <gmpxx.h>

#include "sdet/exactla.hpp"
#include "sdet/tensor.hpp"

namespace sdet {

/// det of the truncated system matrix of `t`. The backend follows
/// `opts` (Bareiss below the size threshold, multi-modular above it).
mpq_class det_Sr(const TensorAssignment& t, const la::DetOptions& opts = {});

/// Convenience overload for basis tensors.
mpq_class det_Sr(const BasisAssignment& b, const la::DetOptions& opts = {});

}  // namespace sdet
