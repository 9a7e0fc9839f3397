// SPDX-License-Identifier: Apache-2.0
#include "onebit/harness/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <string>

#include <fmt/format.h>

namespace onebit {

void write_ber_csv(std::ostream& out, const std::vector<BerPoint>& points) {
  out << kBerCsvHeader << '\n';
  for (const BerPoint& p : points) {
    out << fmt::format("{},{},{},{},{:.9g},{:.6g},{}\n", p.equalizer, p.eb_n0_db, p.bit_errors,
                       p.bits, p.ber, p.mean_iterations, p.multiplies);
  }
}

void write_complexity_csv(std::ostream& out, const std::vector<ComplexityRow>& rows) {
  out << "block_length,overlap,iterations,frame_length,p_exact,blocks,t_g,t_em_block,t_tot,"
         "blocks_overlap,t_gf,t_em_block_f,t_tot_f\n";
  for (const auto& [in, r] : rows) {
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", in.block_length, in.overlap,
                       in.iterations, in.frame_length, r.p_exact, r.blocks, r.t_g, r.t_em_block,
                       r.t_tot, r.blocks_overlap, r.t_gf, r.t_em_block_f, r.t_tot_f);
  }
}

std::string git_blob_hash(std::string_view content) {
  const std::string header = "blob " + std::to_string(content.size()) + '\0';
  std::string blob = header;
  blob.append(content);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_Digest(blob.data(), blob.size(), digest.data(), &length, EVP_sha1(), nullptr);
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

}  // namespace onebit
