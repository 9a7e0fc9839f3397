// SPDX-License-Identifier: Apache-2.0
#include "onebit/channel/channel_taps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "onebit/error.hpp"
#include "onebit/numerics/dft.hpp"

namespace onebit {

ChannelTaps ChannelTaps::zeros(int antennas, int users, int memory) {
  if (antennas < 1 || users < 1 || memory < 0) throw ShapeError("ChannelTaps: bad dimensions");
  ChannelTaps out{antennas, users, memory, {}};
  out.taps.assign(static_cast<std::size_t>(memory) + 1, CMatrix::Zero(antennas, users));
  return out;
}

void ChannelTaps::validate() const {
  if (antennas < 1 || users < 1 || memory < 0) throw ShapeError("ChannelTaps: bad dimensions");
  if (taps.size() != static_cast<std::size_t>(memory) + 1) {
    throw ShapeError("ChannelTaps: expected " + std::to_string(memory + 1) + " taps, got " +
                     std::to_string(taps.size()));
  }
  for (const auto& h : taps) {
    if (h.rows() != antennas || h.cols() != users) throw ShapeError("ChannelTaps: tap is not M x K");
  }
}

PowerDelayProfile PowerDelayProfile::extended_vehicular_a() {
  return {{0.0, 30.0, 150.0, 310.0, 370.0, 710.0, 1090.0, 1730.0, 2510.0},
          {0.0, -1.5, -1.4, -3.6, -0.6, -9.1, -7.0, -12.0, -16.9}};
}

double PowerDelayProfile::max_delay_ns() const {
  return delays_ns.empty() ? 0.0 : *std::max_element(delays_ns.begin(), delays_ns.end());
}

double stretched_sample_period_ns(const PowerDelayProfile& pdp, int memory) {
  const double spread = pdp.max_delay_ns();
  if (spread <= 0.0) return 1.0;
  if (memory <= 0) {
    throw ConfigError("a channel memory of 0 cannot hold a profile with " + std::to_string(spread) +
                      " ns delay spread");
  }
  return spread / static_cast<double>(memory);
}

std::vector<double> sampled_tap_powers(const PowerDelayProfile& pdp, int memory,
                                       double sample_period_ns) {
  if (pdp.delays_ns.size() != pdp.powers_db.size() || pdp.delays_ns.empty()) {
    throw ConfigError("power delay profile: delays and powers must be nonempty and equal length");
  }
  if (!(sample_period_ns > 0.0)) throw ConfigError("sample_period_ns must be positive");
  std::vector<double> weights(static_cast<std::size_t>(memory) + 1, 0.0);
  for (std::size_t p = 0; p < pdp.delays_ns.size(); ++p) {
    const auto index = std::lround(pdp.delays_ns[p] / sample_period_ns);
    if (index < 0 || index > memory) {
      throw ConfigError("delay " + std::to_string(pdp.delays_ns[p]) + " ns maps to tap " +
                        std::to_string(index) + ", beyond channel memory L = " +
                        std::to_string(memory));
    }
    weights[static_cast<std::size_t>(index)] += std::pow(10.0, pdp.powers_db[p] / 10.0);
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (auto& w : weights) w /= total;
  return weights;
}

ChannelTaps generate_taps(int antennas, int users, int memory, const PowerDelayProfile& pdp,
                          double sample_period_ns, RngStream& rng) {
  const auto weights = sampled_tap_powers(pdp, memory, sample_period_ns);
  ChannelTaps out = ChannelTaps::zeros(antennas, users, memory);
  for (int l = 0; l <= memory; ++l) {
    const double w = weights[static_cast<std::size_t>(l)];
    if (w == 0.0) continue;
    const double sigma = std::sqrt(w / 2.0);
    CMatrix& h = out.taps[static_cast<std::size_t>(l)];
    for (Index i = 0; i < h.size(); ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      h.data()[i] = cd(sigma * re, sigma * im);
    }
  }
  return out;
}

ChannelTaps generate_eva_taps(int antennas, int users, int memory,
                              std::optional<double> sample_period_ns, RngStream& rng) {
  const auto pdp = PowerDelayProfile::extended_vehicular_a();
  const double period = sample_period_ns.value_or(stretched_sample_period_ns(pdp, memory));
  return generate_taps(antennas, users, memory, pdp, period, rng);
}

FrequencyResponse frequency_response(const ChannelTaps& taps, int block_length) {
  taps.validate();
  if (block_length <= taps.memory) {
    throw ConfigError("frequency_response: N_b = " + std::to_string(block_length) +
                      " must exceed L = " + std::to_string(taps.memory));
  }
  const Index streams = static_cast<Index>(taps.antennas) * taps.users;
  CVector stacked = CVector::Zero(streams * block_length);
  for (int l = 0; l <= taps.memory; ++l) {
    stacked.segment(l * streams, streams) = taps[l].reshaped();
  }
  // sum_l H_l exp(-j 2 pi l i / N) is sqrt(N) times the F^H transform.
  const BlockDft dft(static_cast<std::size_t>(block_length));
  dft.transform(std::span<cd>(stacked.data(), static_cast<std::size_t>(stacked.size())),
                static_cast<std::size_t>(streams), DftDirection::inverse);
  stacked *= std::sqrt(static_cast<double>(block_length));
  FrequencyResponse out;
  out.bins.reserve(static_cast<std::size_t>(block_length));
  for (int i = 0; i < block_length; ++i) {
    out.bins.emplace_back(stacked.segment(i * streams, streams).reshaped(taps.antennas, taps.users));
  }
  return out;
}

nlohmann::json channel_to_json(const ChannelTaps& taps) {
  taps.validate();
  nlohmann::json doc;
  doc["M"] = taps.antennas;
  doc["K"] = taps.users;
  doc["L"] = taps.memory;
  auto& list = doc["taps"] = nlohmann::json::array();
  for (const auto& h : taps.taps) {
    auto entries = nlohmann::json::array();
    for (Index m = 0; m < h.rows(); ++m) {
      for (Index k = 0; k < h.cols(); ++k) entries.push_back({h(m, k).real(), h(m, k).imag()});
    }
    list.push_back(std::move(entries));
  }
  return doc;
}

ChannelTaps channel_from_json(const nlohmann::json& doc) {
  ChannelTaps out;
  try {
    out = ChannelTaps::zeros(doc.at("M").get<int>(), doc.at("K").get<int>(), doc.at("L").get<int>());
    const auto& list = doc.at("taps");
    if (!list.is_array() || list.size() != out.taps.size()) {
      throw ShapeError("channel json: expected L+1 taps");
    }
    for (std::size_t l = 0; l < list.size(); ++l) {
      const auto& entries = list[l];
      CMatrix& h = out.taps[l];
      if (!entries.is_array() || entries.size() != static_cast<std::size_t>(h.size())) {
        throw ShapeError("channel json: tap " + std::to_string(l) + " does not hold M*K entries");
      }
      std::size_t e = 0;
      for (Index m = 0; m < h.rows(); ++m) {
        for (Index k = 0; k < h.cols(); ++k, ++e) {
          h(m, k) = cd(entries[e].at(0).get<double>(), entries[e].at(1).get<double>());
        }
      }
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ShapeError(std::string("channel json: ") + ex.what());
  }
  return out;
}

}  // namespace onebit
