#include "sdet/det_sr.hpp"

#include "sdet/system.hpp"

namespace sdet {

mpq_class det_Sr(const TensorAssignment& t, const la::DetOptions& opts) {
  return la::determinant(build_matrix(t).matrix(), opts);
}

mpq_class det_Sr(const BasisAssignment& b, const la::DetOptions& opts) {
  return det_Sr(tensor_from_basis(b), opts);
}

}  // namespace sdet
