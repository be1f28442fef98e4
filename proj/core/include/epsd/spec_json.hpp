// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
//
// JSON (de)serialization of transform specifications. The document shape is
//   {"transform": "<name>", ...parameter fields...}
// with transform one of: stft-box (h), stft-gauss (sigma), s-transform
// (kappa, optional k_of_f), cwt-harmonic (m, n, optional scales),
// cwt-morse (beta, gamma, optional scales).
//
//   scales: {"c0": number, "s0": number, "levels": integer (optional)}
//   k_of_f: {"type": "power-law", "kappa0": n, "f_ref": n, "p": n}
//        or {"type": "table", "freqs": [...], "values": [...]}
//
// Parsing rejects unknown fields and reports missing required fields by
// name; parameter ranges are validated as in validate_spec.
#pragma once

#include <string>

#include "epsd/kernels.hpp"

namespace epsd {

TransformSpec parse_spec_json(const std::string& text);

// Canonical JSON form of a spec; parse_spec_json(spec_to_json(s)) recovers s.
std::string spec_to_json(const TransformSpec& spec);

}  // namespace epsd
