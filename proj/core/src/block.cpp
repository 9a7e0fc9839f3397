// SPDX-License-Identifier: Apache-2.0
#include "onebit/equalizers/block.hpp"

#include "onebit/error.hpp"

namespace onebit {

CVector stack_block(const CMatrix& samples, Index start, int block_length) {
  if (start < 0 || block_length < 1 || start + block_length > samples.cols()) {
    throw ShapeError("stack_block: window outside the frame");
  }
  const Index rows = samples.rows();
  CVector out(rows * block_length);
  for (Index i = 0; i < block_length; ++i) {
    out.segment(i * rows, rows) = samples.col(start + block_length - 1 - i);
  }
  return out;
}

CVector stack_exact_symbols(const CMatrix& symbols, Index start, int block_length, int memory) {
  if (start < 0 || block_length < 1 || memory < 0 || start + block_length > symbols.cols()) {
    throw ShapeError("stack_exact_symbols: window outside the frame");
  }
  const Index users = symbols.rows();
  CVector out = CVector::Zero(users * (block_length + memory));
  for (Index i = 0; i < block_length + memory; ++i) {
    const Index t = start + block_length - 1 - i;
    if (t >= 0) out.segment(i * users, users) = symbols.col(t);
  }
  return out;
}

CMatrix unstack_block(const CVector& xi, int users, int block_length) {
  if (xi.size() < static_cast<Index>(users) * block_length) {
    throw ShapeError("unstack_block: estimate shorter than K N_b");
  }
  CMatrix out(users, block_length);
  for (Index t = 0; t < block_length; ++t) {
    out.col(t) = xi.segment((block_length - 1 - t) * users, users);
  }
  return out;
}

}  // namespace onebit
