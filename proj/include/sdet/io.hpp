#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "sdet/partition.hpp"
#include "sdet/tensor.hpp"

namespace sdet::io {

// Text formats. Blank lines and lines starting with '#' are ignored.
//
//   tensor:            "r d" then "i_1 ... i_r : c_1 ... c_d"
//   basis assignment:  "r d" (or "n r d" with n = r*d) then "i_1 ... i_r -> part"
//   partition:         "n r d" then "i_1 ... i_r -> part"
//   hypergraph:        "n r" then "i_1 ... i_r"
//
// Every r-subset must appear exactly once in the tensor, basis and
// partition formats. Rationals are written "p/q" or as integers.

TensorAssignment read_tensor(std::istream& is);
void write_tensor(std::ostream& os, const TensorAssignment& t);

BasisAssignment read_basis(std::istream& is);
/// Writes the "n r d" header so the file is also a valid partition file.
void write_basis(std::ostream& os, const BasisAssignment& b);

DPartition read_partition(std::istream& is);
void write_partition(std::ostream& os, const DPartition& p);

Hypergraph read_hypergraph(std::istream& is);
void write_hypergraph(std::ostream& os, const Hypergraph& h);

/// Reads either a tensor or a basis assignment, deciding by the first data
/// line (':' versus '->').
std::variant<TensorAssignment, BasisAssignment> read_tensor_or_basis(std::istream& is);

/// Exact rational parsing; throws std::invalid_argument on bad input.
mpq_class parse_rational(const std::string& text);

}  // namespace sdet::io
