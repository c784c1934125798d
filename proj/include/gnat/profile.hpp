#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace gnat {

// Polynomial in t with ascending coefficients c[0] + c[1] t + ...
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }
  explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

  double operator()(double t) const;
  Polynomial derivative() const;
  const std::vector<double>& coefficients() const noexcept { return c_; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& a);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<double> c_;
};

// A scalar function of t = |u|² together with its first derivative. When no
// derivative is supplied one is taken by central differences (step 1e-6).
class ProfileFunction {
 public:
  using Fn = std::function<double(double)>;

  ProfileFunction() : ProfileFunction(Polynomial{}) {}
  ProfileFunction(Polynomial p);  // NOLINT(google-explicit-constructor)
  ProfileFunction(Fn value, Fn derivative);

  double value(double t) const { return value_(t); }
  double derivative(double t) const;
  bool has_analytic_derivative() const noexcept { return static_cast<bool>(derivative_); }
  const std::optional<Polynomial>& polynomial() const noexcept { return poly_; }

 private:
  Fn value_;
  Fn derivative_;
  std::optional<Polynomial> poly_;
};

enum class Slot { alpha1 = 0, alpha2, alpha3, beta1, beta2, beta3 };
inline constexpr std::array<Slot, 6> kAllSlots{Slot::alpha1, Slot::alpha2, Slot::alpha3,
                                               Slot::beta1,  Slot::beta2,  Slot::beta3};
std::string_view slot_name(Slot s);

// The six profile functions and their derivatives evaluated at one t.
struct ProfileJet {
  double t = 0.0;
  double a1 = 0, a2 = 0, a3 = 0, b1 = 0, b2 = 0, b3 = 0;
  double da1 = 0, da2 = 0, da3 = 0, db1 = 0, db2 = 0, db3 = 0;
};

// The six defining functions α1, α2, α3, β1, β2, β3 of a g-natural metric.
class MetricProfile {
 public:
  MetricProfile() = default;
  MetricProfile(std::array<ProfileFunction, 6> fns, std::string label);

  static MetricProfile from_polynomials(const std::array<Polynomial, 6>& polys, std::string label);

  const ProfileFunction& operator[](Slot s) const { return fns_[static_cast<std::size_t>(s)]; }
  const std::string& label() const noexcept { return label_; }

  ProfileJet at(double t) const;

  // Copy with one function replaced.
  MetricProfile with(Slot s, ProfileFunction f, std::string label) const;

  // All six functions polynomial? Then their coefficient lists.
  std::optional<std::array<Polynomial, 6>> polynomials() const;

  // One note per function whose derivative falls back to finite differences.
  std::vector<std::string> warnings() const;

 private:
  std::array<ProfileFunction, 6> fns_;
  std::string label_ = "custom";
};

// φ_i = α_i + t β_i, α = α1(α1+α3) − α2², φ = φ1(φ1+φ3) − φ2², and derivatives.
struct DerivedValues {
  double t = 0.0;
  double phi1 = 0, phi2 = 0, phi3 = 0;
  double alpha_det = 0, phi_det = 0;
  double d_phi1 = 0, d_phi2 = 0, d_phi3 = 0;
  double d_alpha_det = 0, d_phi_det = 0;
};

DerivedValues derive(const ProfileJet& j);
DerivedValues derive(const MetricProfile& p, double t);

// Pointwise view of the derived functions of a profile.
class DerivedProfile {
 public:
  explicit DerivedProfile(MetricProfile p) : p_(std::move(p)) {}
  DerivedValues at(double t) const { return derive(p_, t); }
  double phi1(double t) const { return at(t).phi1; }
  double phi2(double t) const { return at(t).phi2; }
  double phi3(double t) const { return at(t).phi3; }
  double alpha_det(double t) const { return at(t).alpha_det; }
  double phi_det(double t) const { return at(t).phi_det; }

 private:
  MetricProfile p_;
};

DerivedProfile derive(const MetricProfile& p);

enum class Classification { Degenerate, NondegeneratePseudo, Riemannian };
std::string_view to_string(Classification c);

inline constexpr double kDegeneracyThreshold = 1e-12;

// Linearly spaced grid on [0, t_max] (n points, both ends included).
std::vector<double> sample_grid(double t_max = 10.0, int n = 64);

Classification classify(const MetricProfile& p, const std::vector<double>& t_samples);
Classification classify(const MetricProfile& p);  // default grid

struct InverseCoefficients {
  double psi_lambda = 0;
  double psi_theta = 0;
  double psi_omega = 0;
  // α1(α1+α3) ≠ 0 and φ1(φ1+φ3) ≠ 0, required by the block inverse.
  bool side_conditions_hold = true;
};

// Throws DegenerateAt when |αφ| < 1e-12.
InverseCoefficients psi_coeffs(const ProfileJet& j);
InverseCoefficients psi_coeffs(const MetricProfile& p, double t);

// Gaps of the four linear identities tying ψ_λ, ψ_θ, ψ_ω to the profile,
// each divided by the largest of its terms (at least 1).
std::array<double, 4> pru1_residuals(const MetricProfile& p, double t);

// Presets: "sasaki", "flat-family", "scaled-sasaki".
MetricProfile preset(std::string_view name);
std::vector<std::string> preset_names();

// Largest relative gap between supplied and finite-difference derivatives.
struct DerivativeCheck {
  double max_relative_error = 0;
  Slot worst_slot = Slot::alpha1;
  double worst_t = 0;
};
DerivativeCheck check_derivatives(const MetricProfile& p, const std::vector<double>& t_samples);

// Profile documents (JSON). See docs/profile_format.md.
MetricProfile profile_from_json(const nlohmann::json& doc);
nlohmann::json profile_to_json(const MetricProfile& p);
// A preset name or a path to a profile document.
MetricProfile load_profile(const std::string& name_or_path);

}  // namespace gnat
