// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 epsd-kit contributors
#include "epsd/spec_json.hpp"

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace epsd {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument("spec: " + message);
}

void check_fields(const json& j, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) {
      if (it.key() == a) {
        known = true;
        break;
      }
    }
    if (!known) fail("unknown field '" + it.key() + "'");
  }
}

double need_number(const json& j, const char* field) {
  if (!j.contains(field)) fail(std::string("missing field '") + field + "'");
  const json& v = j.at(field);
  if (!v.is_number()) fail(std::string("field '") + field + "' must be a number");
  return v.get<double>();
}

ScaleGridSpec parse_scales(const json& j) {
  ScaleGridSpec s;
  if (!j.contains("scales")) return s;
  const json& sj = j.at("scales");
  if (!sj.is_object()) fail("field 'scales' must be an object");
  check_fields(sj, {"c0", "s0", "levels"});
  s.c0 = need_number(sj, "c0");
  s.s0 = need_number(sj, "s0");
  if (sj.contains("levels")) {
    const json& lv = sj.at("levels");
    if (!lv.is_number_unsigned() || lv.get<std::uint64_t>() == 0) {
      fail("field 'levels' must be a positive integer");
    }
    s.levels = lv.get<std::size_t>();
  }
  return s;
}

std::optional<std::variant<PowerLawK, TabulatedK>> parse_k_of_f(const json& j) {
  if (!j.contains("k_of_f")) return std::nullopt;
  const json& kj = j.at("k_of_f");
  if (!kj.is_object()) fail("field 'k_of_f' must be an object");
  if (!kj.contains("type") || !kj.at("type").is_string()) {
    fail("field 'k_of_f' requires a string field 'type'");
  }
  const std::string type = kj.at("type").get<std::string>();
  if (type == "power-law") {
    check_fields(kj, {"type", "kappa0", "f_ref", "p"});
    PowerLawK p;
    p.kappa0 = need_number(kj, "kappa0");
    p.f_ref = need_number(kj, "f_ref");
    p.p = need_number(kj, "p");
    return p;
  }
  if (type == "table") {
    check_fields(kj, {"type", "freqs", "values"});
    for (const char* field : {"freqs", "values"}) {
      if (!kj.contains(field)) fail(std::string("missing field '") + field + "'");
      if (!kj.at(field).is_array()) {
        fail(std::string("field '") + field + "' must be an array of numbers");
      }
    }
    TabulatedK t;
    t.freqs = kj.at("freqs").get<std::vector<double>>();
    t.values = kj.at("values").get<std::vector<double>>();
    return t;
  }
  fail("k_of_f type must be 'power-law' or 'table'");
}

json scales_json(const ScaleGridSpec& s) {
  json sj{{"c0", s.c0}, {"s0", s.s0}};
  if (s.levels.has_value()) sj["levels"] = *s.levels;
  return sj;
}

}  // namespace

TransformSpec parse_spec_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail("document must be a JSON object");
  if (!j.contains("transform")) fail("missing field 'transform'");
  if (!j.at("transform").is_string()) fail("field 'transform' must be a string");
  const std::string name = j.at("transform").get<std::string>();

  TransformSpec spec;
  if (name == "stft-box") {
    check_fields(j, {"transform", "h"});
    spec = StftBox{need_number(j, "h")};
  } else if (name == "stft-gauss") {
    check_fields(j, {"transform", "sigma"});
    spec = StftGauss{need_number(j, "sigma")};
  } else if (name == "s-transform") {
    check_fields(j, {"transform", "kappa", "k_of_f"});
    STrans st;
    st.kappa = need_number(j, "kappa");
    st.k_of_f = parse_k_of_f(j);
    spec = st;
  } else if (name == "cwt-harmonic") {
    check_fields(j, {"transform", "m", "n", "scales"});
    CwtHarmonic hw;
    hw.m = need_number(j, "m");
    hw.n = need_number(j, "n");
    hw.scales = parse_scales(j);
    spec = hw;
  } else if (name == "cwt-morse") {
    check_fields(j, {"transform", "beta", "gamma", "scales"});
    CwtMorse mw;
    mw.beta = need_number(j, "beta");
    mw.gamma = need_number(j, "gamma");
    mw.scales = parse_scales(j);
    spec = mw;
  } else {
    fail("unknown transform '" + name +
         "' (expected stft-box, stft-gauss, s-transform, cwt-harmonic, or "
         "cwt-morse)");
  }
  validate_spec(spec);
  return spec;
}

std::string spec_to_json(const TransformSpec& spec) {
  json j;
  j["transform"] = spec_name(spec);
  if (const auto* b = std::get_if<StftBox>(&spec)) {
    j["h"] = b->h;
  } else if (const auto* g = std::get_if<StftGauss>(&spec)) {
    j["sigma"] = g->sigma;
  } else if (const auto* st = std::get_if<STrans>(&spec)) {
    j["kappa"] = st->kappa;
    if (st->k_of_f.has_value()) {
      if (const auto* pl = std::get_if<PowerLawK>(&*st->k_of_f)) {
        j["k_of_f"] = json{{"type", "power-law"},
                           {"kappa0", pl->kappa0},
                           {"f_ref", pl->f_ref},
                           {"p", pl->p}};
      } else {
        const auto& tk = std::get<TabulatedK>(*st->k_of_f);
        j["k_of_f"] =
            json{{"type", "table"}, {"freqs", tk.freqs}, {"values", tk.values}};
      }
    }
  } else if (const auto* hw = std::get_if<CwtHarmonic>(&spec)) {
    j["m"] = hw->m;
    j["n"] = hw->n;
    j["scales"] = scales_json(hw->scales);
  } else if (const auto* mw = std::get_if<CwtMorse>(&spec)) {
    j["beta"] = mw->beta;
    j["gamma"] = mw->gamma;
    j["scales"] = scales_json(mw->scales);
  }
  return j.dump();
}

}  // namespace epsd
