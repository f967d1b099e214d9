#pragma once

#include <iosfwd>
#include <string>

#include "tgideal/matrix.hpp"

namespace tgideal {

/// Reads a Matrix Market file into dense storage. Supports the banner
/// `%%MatrixMarket matrix array real general` (also symmetric/skew-symmetric
/// array storage) and `coordinate` files with real or integer field and
/// general / symmetric / skew-symmetric symmetry. Coordinate duplicates are
/// summed; symmetric files are expanded to full storage. Complex and pattern
/// fields are refused.
DenseMatrix read_matrix_market(const std::string& path);
DenseMatrix read_matrix_market(std::istream& in, const std::string& name = "<stream>");

/// Writes dense array format with 17 significant digits, enough for
/// bit-exact round-trips.
void write_matrix_market(const std::string& path, const DenseMatrix& m);
void write_matrix_market(std::ostream& out, const DenseMatrix& m);

}  // namespace tgideal
