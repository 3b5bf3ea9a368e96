#include "bifield/state_io.hpp"

#include <stdexcept>

namespace bifield {

namespace {

BasisTag tag_from_name(const std::string& name) {
  if (name == "photon") return BasisTag::photon();
  if (name == "local") return BasisTag::local();
  if (name == "bio_local") return BasisTag::bio_local();
  if (name == "blip") return BasisTag::blip();
  throw std::invalid_argument("unknown state tag '" + name + "'");
}

StateComponent component_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("state document must be an object");
  for (const char* key : {"tag", "s", "lambda", "basis", "re", "im"}) {
    if (!doc.contains(key)) throw std::invalid_argument(std::string("state document lacks '") + key + "'");
  }
  BasisTag tag = tag_from_name(doc.at("tag").get<std::string>());
  const ModeLabel label(doc.at("s").get<int>(), doc.at("lambda").get<int>());
  const auto basis = doc.at("basis").get<std::string>();
  if (basis != "k" && basis != "x") throw std::invalid_argument("basis must be \"k\" or \"x\"");
  if ((basis == "k") != tag.is_photon()) {
    throw std::invalid_argument("photon states use basis \"k\", positional states basis \"x\"");
  }
  const auto re = doc.at("re").get<std::vector<double>>();
  const auto im = doc.at("im").get<std::vector<double>>();
  if (re.size() != im.size()) throw std::invalid_argument("re and im lengths differ");
  CVector amps(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) amps[i] = {re[i], im[i]};
  StateComponent c{std::move(tag), {}};
  c.amplitudes[label.index()] = std::move(amps);
  return c;
}

}  // namespace

nlohmann::json state_to_json(const SingleExcitationState& state) {
  if (state.vacuum_amplitude() != cplx(0.0)) {
    throw std::invalid_argument("state export has no field for a vacuum amplitude");
  }
  nlohmann::json docs = nlohmann::json::array();
  for (const auto& c : state.components()) {
    if (!c.tag.is_photon() && c.tag.weight().kind() == WeightKind::Custom) {
      throw std::invalid_argument("custom-weight states cannot be exported");
    }
    for (std::size_t b = 0; b < kBranchCount; ++b) {
      if (c.amplitudes[b].empty()) continue;
      const ModeLabel label = ModeLabel::from_index(b);
      std::vector<double> re, im;
      re.reserve(c.amplitudes[b].size());
      im.reserve(c.amplitudes[b].size());
      for (const auto& v : c.amplitudes[b]) {
        re.push_back(v.real());
        im.push_back(v.imag());
      }
      docs.push_back({{"tag", c.tag.name()},
                      {"s", label.s()},
                      {"lambda", label.lambda()},
                      {"basis", c.tag.is_photon() ? "k" : "x"},
                      {"re", re},
                      {"im", im}});
    }
  }
  if (docs.size() == 1) return docs.front();
  return docs;
}

SingleExcitationState state_from_json(const nlohmann::json& doc, GridPtr grid) {
  std::vector<StateComponent> comps;
  try {
    if (doc.is_array()) {
      for (const auto& d : doc) comps.push_back(component_from_json(d));
    } else {
      comps.push_back(component_from_json(doc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed state document: ") + e.what());
  }
  return make_state_from_components(std::move(grid), std::move(comps));
}

}  // namespace bifield
