#include "bifield/weight.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bifield/errors.hpp"

namespace bifield {

WeightFunction WeightFunction::abs_power(double exponent) {
  if (!std::isfinite(exponent)) throw std::invalid_argument("weight exponent must be finite");
  return WeightFunction(Power{exponent});
}

WeightFunction WeightFunction::custom(std::string name, std::function<double(double)> rule) {
  if (!rule) throw std::invalid_argument("custom weight needs an evaluation rule");
  return WeightFunction(Rule{std::make_shared<const std::function<double(double)>>(std::move(rule)),
                             std::move(name), false});
}

WeightKind WeightFunction::kind() const {
  if (const auto* p = std::get_if<Power>(&rep_)) {
    if (p->exponent == 0.0) return WeightKind::Unit;
    if (p->exponent == 0.5) return WeightKind::SqrtAbsK;
    if (p->exponent == -0.5) return WeightKind::InvSqrtAbsK;
  }
  return WeightKind::Custom;
}

double WeightFunction::operator()(double k) const {
  double value = 0.0;
  if (const auto* p = std::get_if<Power>(&rep_)) {
    if (p->exponent == 0.0) return 1.0;
    if (k == 0.0) {
      throw DegenerateModeError("weight " + name() + " evaluated at the k = 0 mode");
    }
    const double a = std::abs(k);
    if (p->exponent == 0.5) {
      value = std::sqrt(a);
    } else if (p->exponent == -0.5) {
      value = 1.0 / std::sqrt(a);
    } else if (p->exponent == 1.0) {
      value = a;
    } else if (p->exponent == -1.0) {
      value = 1.0 / a;
    } else {
      value = std::pow(a, p->exponent);
    }
  } else {
    const auto& r = std::get<Rule>(rep_);
    const double raw = (*r.fn)(k);
    value = r.inverted ? 1.0 / raw : raw;
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "weight " << name() << " is not finite and positive at k = " << k;
    throw DegenerateModeError(msg.str());
  }
  return value;
}

WeightFunction WeightFunction::reciprocal() const {
  if (const auto* p = std::get_if<Power>(&rep_)) return WeightFunction(Power{-p->exponent + 0.0});
  auto r = std::get<Rule>(rep_);
  r.inverted = !r.inverted;
  return WeightFunction(std::move(r));
}

WeightFunction WeightFunction::operator*(const WeightFunction& other) const {
  const auto* a = std::get_if<Power>(&rep_);
  const auto* b = std::get_if<Power>(&other.rep_);
  if (a && b) return WeightFunction(Power{a->exponent + b->exponent});
  WeightFunction lhs = *this;
  WeightFunction rhs = other;
  return custom("(" + name() + ")*(" + other.name() + ")",
                [lhs, rhs](double k) { return lhs(k) * rhs(k); });
}

bool WeightFunction::self_reciprocal() const {
  const auto* p = std::get_if<Power>(&rep_);
  return p && p->exponent == 0.0;
}

int WeightFunction::orientation() const {
  if (const auto* p = std::get_if<Power>(&rep_)) {
    return p->exponent > 0.0 ? 1 : (p->exponent < 0.0 ? -1 : 0);
  }
  return std::get<Rule>(rep_).inverted ? -1 : 1;
}

double WeightFunction::exponent() const {
  if (const auto* p = std::get_if<Power>(&rep_)) return p->exponent;
  throw std::logic_error("custom weight " + name() + " has no power-law exponent");
}

std::string WeightFunction::name() const {
  if (const auto* p = std::get_if<Power>(&rep_)) {
    switch (kind()) {
      case WeightKind::Unit:
        return "unit";
      case WeightKind::SqrtAbsK:
        return "sqrt_abs_k";
      case WeightKind::InvSqrtAbsK:
        return "inv_sqrt_abs_k";
      case WeightKind::Custom:
        break;
    }
    std::ostringstream os;
    os << "abs_k^" << p->exponent;
    return os.str();
  }
  const auto& r = std::get<Rule>(rep_);
  return r.inverted ? "1/(" + r.name + ")" : r.name;
}

bool WeightFunction::operator==(const WeightFunction& other) const {
  const auto* a = std::get_if<Power>(&rep_);
  const auto* b = std::get_if<Power>(&other.rep_);
  if (a && b) return a->exponent == b->exponent;
  if (a || b) return false;
  const auto& ra = std::get<Rule>(rep_);
  const auto& rb = std::get<Rule>(other.rep_);
  return ra.fn == rb.fn && ra.inverted == rb.inverted;
}

WeightFunction weight_from_name(const std::string& name) {
  if (name == "unit" || name == "blip") return WeightFunction::unit();
  if (name == "sqrt_abs_k" || name == "local") return WeightFunction::sqrt_abs_k();
  if (name == "inv_sqrt_abs_k" || name == "bio_local") return WeightFunction::inv_sqrt_abs_k();
  throw std::invalid_argument("unknown weight name '" + name + "'");
}

}  // namespace bifield
