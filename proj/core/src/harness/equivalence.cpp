#include "bmolab/harness/equivalence.hpp"

#include <algorithm>
#include <sstream>

namespace bmolab {

EquivalenceSpec EquivalenceSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("equivalence pairing must look like 'name:parameter'");
  }
  const std::string_view name = text.substr(0, colon);
  EquivalenceSpec spec;
  try {
    spec.parameter = std::stod(std::string(text.substr(colon + 1)));
  } catch (const std::exception&) {
    throw ConfigError("bad pairing parameter in '" + std::string(text) + "'");
  }
  if (name == "weak_type") spec.pairing = Pairing::weak_type;
  else if (name == "sub_unit_power") spec.pairing = Pairing::sub_unit_power;
  else if (name == "centered") spec.pairing = Pairing::centered;
  else if (name == "power") spec.pairing = Pairing::power;
  else if (name == "self") spec.pairing = Pairing::self;
  else throw ConfigError("unknown equivalence pairing '" + std::string(name) + "'");
  const auto [a, b] = spec.norms();
  a.validate();
  b.validate();
  return spec;
}

std::pair<BmoVariant, BmoVariant> EquivalenceSpec::norms() const {
  const double x = parameter;
  switch (pairing) {
    case Pairing::weak_type: return {BmoVariant::strong(1.0), BmoVariant::weak(x)};
    case Pairing::sub_unit_power: return {BmoVariant::strong(1.0), BmoVariant::strong(x)};
    case Pairing::centered: return {BmoVariant::strong(x), BmoVariant::inf_centered(x)};
    case Pairing::power: return {BmoVariant::strong(1.0), BmoVariant::strong(x)};
    case Pairing::self: return {BmoVariant::strong(x), BmoVariant::strong(x)};
  }
  return {};
}

std::string EquivalenceSpec::descriptor() const {
  std::ostringstream os;
  switch (pairing) {
    case Pairing::weak_type: os << "weak_type"; break;
    case Pairing::sub_unit_power: os << "sub_unit_power"; break;
    case Pairing::centered: os << "centered"; break;
    case Pairing::power: os << "power"; break;
    case Pairing::self: os << "self"; break;
  }
  os << ':' << parameter;
  return os.str();
}

EquivalenceReport equivalence_experiment(const EquivalenceSpec& spec, const Weight& w,
                                         std::span<const GridFunction> corpus,
                                         std::string corpus_descriptor, const CubeFamily& cubes) {
  EquivalenceReport out;
  out.spec = spec;
  std::tie(out.norm_a, out.norm_b) = spec.norms();
  out.norm_a.validate();
  out.norm_b.validate();
  out.corpus = std::move(corpus_descriptor);
  out.weight = w.descriptor();
  out.family = cubes.descriptor();
  out.a1 = a1_constant(w, cubes);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const double b = bmo_norm(corpus[i], w, out.norm_b, cubes).value;
    if (!(b > 0.0)) continue;
    const double a = out.norm_a == out.norm_b ? b : bmo_norm(corpus[i], w, out.norm_a, cubes).value;
    out.members.push_back(i);
    out.ratios.push_back(a / b);
  }
  if (out.ratios.empty()) throw DegenerateError("every corpus member is constant");
  const auto [lo, hi] = std::minmax_element(out.ratios.begin(), out.ratios.end());
  out.min_ratio = *lo;
  out.max_ratio = *hi;
  return out;
}

}  // namespace bmolab
