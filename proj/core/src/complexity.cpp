// SPDX-License-Identifier: Apache-2.0
#include "onebit/harness/complexity.hpp"

#include <bit>
#include <stdexcept>

#include "onebit/error.hpp"

namespace onebit {
namespace {

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("complexity count overflows 64 bits");
  return out;
}

std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("complexity count overflows 64 bits");
  return out;
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0 ? 1 : 0); }

}  // namespace

ComplexityReport complexity_report(const ComplexityInputs& in) {
  if (in.users < 1 || in.antennas < 1 || in.memory < 0 || in.frame_length < 1) {
    throw ConfigError("complexity_report: sizes must be positive");
  }
  if (in.block_length < 2 || !std::has_single_bit(static_cast<unsigned>(in.block_length))) {
    throw ConfigError("complexity_report: N_b must be a power of two");
  }
  if (in.block_length <= in.memory) throw ConfigError("complexity_report: N_b must exceed L");
  if (in.overlap < 0 || in.overlap >= in.block_length) {
    throw ConfigError("complexity_report: need 0 <= L' < N_b");
  }
  const std::uint64_t k = static_cast<std::uint64_t>(in.users);
  const std::uint64_t m = static_cast<std::uint64_t>(in.antennas);
  const std::uint64_t n = static_cast<std::uint64_t>(in.block_length);
  const std::uint64_t log2n = static_cast<std::uint64_t>(std::countr_zero(n));

  ComplexityReport r;
  r.p_exact = k * (n + static_cast<std::uint64_t>(in.memory));
  r.p_mismatched = k * n;
  r.blocks = ceil_div(in.frame_length, n);
  r.blocks_overlap = ceil_div(in.frame_length, n - static_cast<std::uint64_t>(in.overlap));

  const std::uint64_t p = r.p_exact;
  const std::uint64_t mn = m * n;
  r.t_g = add(mul(mul(p, p), p), mul(mul(p, p), mn));
  r.t_em_block = add(mul(mn, p + 1), mul(p, mn));
  r.t_tot = add(mul(mul(r.blocks, in.iterations), r.t_em_block), r.t_g);

  r.t_gf = mul(add(add(mul(k * m, log2n), 2 * k * k * m), k * k * k), n);
  r.t_em_block_f = mul(mul(add(mul(m + k, log2n), k * m), n), 2);
  r.t_tot_f = add(mul(mul(r.blocks_overlap, in.iterations), r.t_em_block_f), r.t_gf);
  return r;
}

std::uint64_t time_domain_total(std::uint64_t p, int antennas, int block_length,
                                const std::vector<std::uint64_t>& iterations) {
  const std::uint64_t mn = static_cast<std::uint64_t>(antennas) * static_cast<std::uint64_t>(block_length);
  std::uint64_t total = add(mul(mul(p, p), p), mul(mul(p, p), mn));
  for (std::uint64_t i : iterations) total = add(total, mul(i, mul(mn, 2 * p + 1)));
  return total;
}

}  // namespace onebit
