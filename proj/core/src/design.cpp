#include "dcd/design.hpp"

#include "dcd/error.hpp"

namespace dcd {

CoupledDesign make_design(IntegerMatrix d1, IntegerMatrix d2, int s) {
  if (s < 2) throw Error(ErrorCode::InvalidArgument, "s must be at least 2");
  if (d2.cols() > 0 && d1.rows() != d2.rows())
    throw Error(ErrorCode::DimensionMismatch, "D1 and D2 have different run counts");
  if (d2.cols() == 0 && d2.rows() != d1.rows()) d2 = IntegerMatrix(d1.rows(), 0);
  for (int r = 0; r < d1.rows(); ++r)
    for (int c = 0; c < d1.cols(); ++c)
      if (d1(r, c) >= s) throw Error(ErrorCode::LevelOutOfRange, "D1 entry outside {0..s-1}");
  return CoupledDesign{std::move(d1), std::move(d2), s, std::nullopt, {}};
}

}  // namespace dcd
