#include "gnat/profile.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "gnat/error.hpp"

namespace gnat {

// ---------------------------------------------------------------- Polynomial

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<double> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(static_cast<double>(k) * c_[k]);
  return Polynomial(std::move(d));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& a) {
  std::vector<double> c = a.c_;
  for (double& v : c) v *= s;
  return Polynomial(std::move(c));
}

// ----------------------------------------------------------- ProfileFunction

ProfileFunction::ProfileFunction(Polynomial p) : poly_(std::move(p)) {
  value_ = [q = *poly_](double t) { return q(t); };
  derivative_ = [d = poly_->derivative()](double t) { return d(t); };
}

ProfileFunction::ProfileFunction(Fn value, Fn derivative)
    : value_(std::move(value)), derivative_(std::move(derivative)) {
  if (!value_) throw Error("profile function needs a value");
}

double ProfileFunction::derivative(double t) const {
  if (derivative_) return derivative_(t);
  constexpr double h = 1e-6;
  if (t >= h) return (value_(t + h) - value_(t - h)) / (2.0 * h);
  return (-3.0 * value_(t) + 4.0 * value_(t + h) - value_(t + 2.0 * h)) / (2.0 * h);
}

std::string_view slot_name(Slot s) {
  switch (s) {
    case Slot::alpha1: return "alpha1";
    case Slot::alpha2: return "alpha2";
    case Slot::alpha3: return "alpha3";
    case Slot::beta1: return "beta1";
    case Slot::beta2: return "beta2";
    case Slot::beta3: return "beta3";
  }
  return "?";
}

// ------------------------------------------------------------- MetricProfile

MetricProfile::MetricProfile(std::array<ProfileFunction, 6> fns, std::string label)
    : fns_(std::move(fns)), label_(std::move(label)) {}

MetricProfile MetricProfile::from_polynomials(const std::array<Polynomial, 6>& polys, std::string label) {
  std::array<ProfileFunction, 6> fns;
  for (std::size_t i = 0; i < 6; ++i) fns[i] = ProfileFunction(polys[i]);
  return MetricProfile(std::move(fns), std::move(label));
}

ProfileJet MetricProfile::at(double t) const {
  ProfileJet j;
  j.t = t;
  j.a1 = fns_[0].value(t);
  j.a2 = fns_[1].value(t);
  j.a3 = fns_[2].value(t);
  j.b1 = fns_[3].value(t);
  j.b2 = fns_[4].value(t);
  j.b3 = fns_[5].value(t);
  j.da1 = fns_[0].derivative(t);
  j.da2 = fns_[1].derivative(t);
  j.da3 = fns_[2].derivative(t);
  j.db1 = fns_[3].derivative(t);
  j.db2 = fns_[4].derivative(t);
  j.db3 = fns_[5].derivative(t);
  return j;
}

MetricProfile MetricProfile::with(Slot s, ProfileFunction f, std::string label) const {
  MetricProfile out = *this;
  out.fns_[static_cast<std::size_t>(s)] = std::move(f);
  out.label_ = std::move(label);
  return out;
}

std::optional<std::array<Polynomial, 6>> MetricProfile::polynomials() const {
  std::array<Polynomial, 6> out;
  for (std::size_t i = 0; i < 6; ++i) {
    if (!fns_[i].polynomial()) return std::nullopt;
    out[i] = *fns_[i].polynomial();
  }
  return out;
}

std::vector<std::string> MetricProfile::warnings() const {
  std::vector<std::string> out;
  for (Slot s : kAllSlots) {
    if (!(*this)[s].has_analytic_derivative())
      out.push_back(std::string(slot_name(s)) + ": derivative taken by finite differences");
  }
  return out;
}

// ------------------------------------------------------------------- derive

DerivedValues derive(const ProfileJet& j) {
  DerivedValues d;
  d.t = j.t;
  d.phi1 = j.a1 + j.t * j.b1;
  d.phi2 = j.a2 + j.t * j.b2;
  d.phi3 = j.a3 + j.t * j.b3;
  d.d_phi1 = j.da1 + j.b1 + j.t * j.db1;
  d.d_phi2 = j.da2 + j.b2 + j.t * j.db2;
  d.d_phi3 = j.da3 + j.b3 + j.t * j.db3;
  d.alpha_det = j.a1 * (j.a1 + j.a3) - j.a2 * j.a2;
  d.phi_det = d.phi1 * (d.phi1 + d.phi3) - d.phi2 * d.phi2;
  d.d_alpha_det = j.da1 * (j.a1 + j.a3) + j.a1 * (j.da1 + j.da3) - 2.0 * j.a2 * j.da2;
  d.d_phi_det = d.d_phi1 * (d.phi1 + d.phi3) + d.phi1 * (d.d_phi1 + d.d_phi3) - 2.0 * d.phi2 * d.d_phi2;
  return d;
}

DerivedValues derive(const MetricProfile& p, double t) { return derive(p.at(t)); }

DerivedProfile derive(const MetricProfile& p) { return DerivedProfile(p); }

// ----------------------------------------------------------------- classify

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Degenerate: return "degenerate";
    case Classification::NondegeneratePseudo: return "nondegenerate_pseudo";
    case Classification::Riemannian: return "riemannian";
  }
  return "?";
}

std::vector<double> sample_grid(double t_max, int n) {
  if (n < 1) throw ConfigError("sample grid needs at least one point");
  if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = 0.0;
    return out;
  }
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = t_max * i / (n - 1);
  return out;
}

Classification classify(const MetricProfile& p, const std::vector<double>& t_samples) {
  bool riemannian = true;
  for (double t : t_samples) {
    const ProfileJet j = p.at(t);
    const DerivedValues d = derive(j);
    if (std::abs(d.alpha_det * d.phi_det) < kDegeneracyThreshold) return Classification::Degenerate;
    if (!(j.a1 > 0 && d.phi1 > 0 && d.alpha_det > 0 && d.phi_det > 0)) riemannian = false;
  }
  return riemannian ? Classification::Riemannian : Classification::NondegeneratePseudo;
}

Classification classify(const MetricProfile& p) { return classify(p, sample_grid()); }

// ------------------------------------------------------------------ inverse

InverseCoefficients psi_coeffs(const ProfileJet& j) {
  const DerivedValues d = derive(j);
  const double det = d.alpha_det * d.phi_det;
  if (std::abs(det) < kDegeneracyThreshold) throw DegenerateAt(j.t);

  const double a13 = j.a1 + j.a3;
  const double b13 = j.b1 + j.b3;
  const double p13 = d.phi1 + d.phi3;
  const double cross = j.a1 * j.b2 - j.a2 * j.b1;
  const double hh = b13 * d.phi1 - j.b2 * d.phi2;

  InverseCoefficients c;
  c.psi_lambda = (j.a1 * hh - j.a2 * cross) / det;
  c.psi_theta = (-j.a2 * hh + a13 * cross) / det;
  c.psi_omega = (a13 * (j.b1 * p13 - j.b2 * d.phi2) + j.a2 * (j.a2 * b13 - j.b2 * a13)) / det;
  c.side_conditions_hold = std::abs(j.a1 * a13) >= kDegeneracyThreshold &&
                           std::abs(d.phi1 * p13) >= kDegeneracyThreshold;
  return c;
}

InverseCoefficients psi_coeffs(const MetricProfile& p, double t) { return psi_coeffs(p.at(t)); }

std::array<double, 4> pru1_residuals(const MetricProfile& p, double t) {
  const ProfileJet j = p.at(t);
  const DerivedValues d = derive(j);
  const InverseCoefficients c = psi_coeffs(j);
  const double a13 = j.a1 + j.a3;
  const double b13 = j.b1 + j.b3;
  const double p13 = d.phi1 + d.phi3;
  const double al = d.alpha_det;
  // Each identity is x + y = z; the gap is scaled by max(1, |x|, |y|, |z|).
  const auto gap = [](double x, double y, double z) {
    return (x + y - z) / std::max({1.0, std::abs(x), std::abs(y), std::abs(z)});
  };
  return {
      gap(d.phi2 * c.psi_lambda, d.phi1 * c.psi_theta, (j.a1 * j.b2 - j.a2 * j.b1) / al),
      gap(p13 * c.psi_lambda, d.phi2 * c.psi_theta, (j.a1 * b13 - j.a2 * j.b2) / al),
      gap(d.phi2 * c.psi_theta, d.phi1 * c.psi_omega, (a13 * j.b1 - j.a2 * j.b2) / al),
      gap(p13 * c.psi_theta, d.phi2 * c.psi_omega, (a13 * j.b2 - j.a2 * b13) / al),
  };
}

// ------------------------------------------------------------------ presets

MetricProfile preset(std::string_view name) {
  if (name == "sasaki") {
    return MetricProfile::from_polynomials({Polynomial{1.0}, {}, {}, {}, {}, {}}, "sasaki");
  }
  if (name == "flat-family") {
    // α1 + α3 ≡ 1, β1 + β3 ≡ 0, 2α2' = β2, α1' = α2 β2, β1 = β2 (2α2 + t β2).
    return MetricProfile::from_polynomials({Polynomial{1.0, 0.0, 1.0}, Polynomial{0.0, 1.0},
                                            Polynomial{0.0, 0.0, -1.0}, Polynomial{0.0, 8.0},
                                            Polynomial{2.0}, Polynomial{0.0, -8.0}},
                                           "flat-family");
  }
  if (name == "scaled-sasaki") {
    // α1 ≡ 2, α1 + α3 ≡ 3.
    return MetricProfile::from_polynomials({Polynomial{2.0}, {}, Polynomial{1.0}, {}, {}, {}},
                                           "scaled-sasaki");
  }
  throw UnknownPreset("unknown profile preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"sasaki", "flat-family", "scaled-sasaki"}; }

DerivativeCheck check_derivatives(const MetricProfile& p, const std::vector<double>& t_samples) {
  DerivativeCheck out;
  constexpr double h = 1e-6;
  for (Slot s : kAllSlots) {
    const ProfileFunction& f = p[s];
    if (!f.has_analytic_derivative()) continue;
    for (double t : t_samples) {
      const double fd = t >= h ? (f.value(t + h) - f.value(t - h)) / (2.0 * h)
                               : (-3.0 * f.value(t) + 4.0 * f.value(t + h) - f.value(t + 2.0 * h)) / (2.0 * h);
      const double d = f.derivative(t);
      const double rel = std::abs(d - fd) / std::max(1.0, std::abs(d));
      if (rel > out.max_relative_error) {
        out.max_relative_error = rel;
        out.worst_slot = s;
        out.worst_t = t;
      }
    }
  }
  return out;
}

// --------------------------------------------------------------------- JSON

namespace {

Polynomial poly_from_json(const nlohmann::json& v, std::string_view key) {
  if (v.is_number()) return Polynomial{v.get<double>()};
  if (!v.is_array()) throw ProfileFormatError(std::string(key) + ": expected a coefficient list");
  std::vector<double> c;
  for (const auto& e : v) {
    if (!e.is_number()) throw ProfileFormatError(std::string(key) + ": coefficients must be numbers");
    c.push_back(e.get<double>());
  }
  return Polynomial(std::move(c));
}

std::optional<Slot> slot_from_name(std::string_view key) {
  for (Slot s : kAllSlots)
    if (slot_name(s) == key) return s;
  return std::nullopt;
}

}  // namespace

MetricProfile profile_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ProfileFormatError("profile document must be a JSON object");
  if (doc.contains("schema") && doc.at("schema") != 1) throw ProfileFormatError("unsupported profile schema");

  std::array<Polynomial, 6> polys;
  std::string label = doc.value("label", std::string("custom"));
  if (doc.contains("preset")) {
    if (doc.contains("functions")) throw ProfileFormatError("give either 'preset' or 'functions', not both");
    const std::string name = doc.at("preset").get<std::string>();
    auto base = preset(name).polynomials();
    polys = *base;
    if (!doc.contains("label")) label = name;
  } else if (doc.contains("functions")) {
    const auto& fns = doc.at("functions");
    if (!fns.is_object()) throw ProfileFormatError("'functions' must be an object");
    for (const auto& [key, value] : fns.items()) {
      auto s = slot_from_name(key);
      if (!s) throw ProfileFormatError("unknown profile function '" + key + "'");
      polys[static_cast<std::size_t>(*s)] = poly_from_json(value, key);
    }
  } else {
    throw ProfileFormatError("profile document needs 'preset' or 'functions'");
  }

  if (doc.contains("perturb")) {
    const auto& pert = doc.at("perturb");
    if (!pert.is_object()) throw ProfileFormatError("'perturb' must be an object");
    for (const auto& [key, value] : pert.items()) {
      auto s = slot_from_name(key);
      if (!s) throw ProfileFormatError("unknown profile function '" + key + "'");
      polys[static_cast<std::size_t>(*s)] = polys[static_cast<std::size_t>(*s)] + poly_from_json(value, key);
    }
  }
  return MetricProfile::from_polynomials(polys, label);
}

nlohmann::json profile_to_json(const MetricProfile& p) {
  auto polys = p.polynomials();
  if (!polys) throw ProfileFormatError("only polynomial profiles can be serialized");
  nlohmann::json fns = nlohmann::json::object();
  for (Slot s : kAllSlots) fns[std::string(slot_name(s))] = (*polys)[static_cast<std::size_t>(s)].coefficients();
  return {{"schema", 1}, {"label", p.label()}, {"functions", fns}};
}

MetricProfile load_profile(const std::string& name_or_path) {
  for (const auto& n : preset_names())
    if (n == name_or_path) return preset(n);
  if (!std::filesystem::exists(name_or_path))
    throw ConfigError("'" + name_or_path + "' is neither a preset nor a readable profile document");
  std::ifstream in(name_or_path);
  if (!in) throw ConfigError("cannot open profile document '" + name_or_path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ProfileFormatError(std::string("malformed profile document: ") + e.what());
  }
  return profile_from_json(doc);
}

}  // namespace gnat
