#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>

namespace bifield {

enum class WeightKind { Unit, SqrtAbsK, InvSqrtAbsK, Custom };

/// Fourier weight f(k) selecting a flavour of position basis.
///
/// Power laws |k|^p are stored by exponent, so products and reciprocals of
/// the named weights stay exact (|k|^{1/2} * |k|^{1/2} = |k|^1). Exponents
/// other than 0 and +-1/2 report WeightKind::Custom. Arbitrary rules are held
/// by shared pointer together with an inversion flag, so reciprocal() is an
/// exact involution for them as well.
class WeightFunction {
 public:
  static WeightFunction unit() { return abs_power(0.0); }
  static WeightFunction sqrt_abs_k() { return abs_power(0.5); }
  static WeightFunction inv_sqrt_abs_k() { return abs_power(-0.5); }
  static WeightFunction abs_power(double exponent);
  static WeightFunction custom(std::string name, std::function<double(double)> rule);

  WeightKind kind() const;

  /// Throws DegenerateModeError unless the value at k is finite and positive.
  double operator()(double k) const;

  WeightFunction reciprocal() const;
  WeightFunction operator*(const WeightFunction& other) const;

  /// Weight equal to its own reciprocal (only the unit weight among power laws).
  bool self_reciprocal() const;

  /// Sign of the power-law exponent; for custom rules +1 unless inverted.
  int orientation() const;

  bool is_power_law() const { return std::holds_alternative<Power>(rep_); }
  double exponent() const;

  std::string name() const;

  bool operator==(const WeightFunction& other) const;

 private:
  struct Power {
    double exponent;
  };
  struct Rule {
    std::shared_ptr<const std::function<double(double)>> fn;
    std::string name;
    bool inverted;
  };

  explicit WeightFunction(Power p) : rep_(p) {}
  explicit WeightFunction(Rule r) : rep_(std::move(r)) {}

  std::variant<Power, Rule> rep_;
};

/// Named weights accepted in configs: "unit"/"blip", "sqrt_abs_k"/"local",
/// "inv_sqrt_abs_k"/"bio_local".
WeightFunction weight_from_name(const std::string& name);

}  // namespace bifield
