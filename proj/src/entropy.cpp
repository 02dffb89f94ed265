#include "entromin/entropy.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "entromin/errors.hpp"

namespace entromin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp_finite(double v) {
  if (std::isinf(v))
    return v > 0 ? std::numeric_limits<double>::max()
                 : std::numeric_limits<double>::lowest();
  return v;
}

[[noreturn]] void domain_error(const EntropyFunction& f, const char* what,
                               double arg) {
  throw DomainError(std::string(f.name()) + ": " + what + " undefined at " +
                    std::to_string(arg));
}

}  // namespace

EntropyFunction EntropyFunction::from_name(std::string_view name) {
  if (name == "boltzmann_shannon")
    return EntropyFunction(EntropyFamily::BoltzmannShannon);
  if (name == "boltzmann_shannon_minus_u")
    return EntropyFunction(EntropyFamily::BoltzmannShannonMinusU);
  if (name == "burg") return EntropyFunction(EntropyFamily::Burg);
  if (name == "quadratic") return EntropyFunction(EntropyFamily::Quadratic);
  if (name == "fermi_dirac") return EntropyFunction(EntropyFamily::FermiDirac);
  throw SpecParseError("unknown entropy family: " + std::string(name));
}

std::string_view EntropyFunction::name() const {
  switch (family_) {
    case EntropyFamily::BoltzmannShannon: return "boltzmann_shannon";
    case EntropyFamily::BoltzmannShannonMinusU:
      return "boltzmann_shannon_minus_u";
    case EntropyFamily::Burg: return "burg";
    case EntropyFamily::Quadratic: return "quadratic";
    case EntropyFamily::FermiDirac: return "fermi_dirac";
  }
  return "";
}

double EntropyFunction::domain_lo() const {
  switch (family_) {
    case EntropyFamily::Quadratic: return -kInf;
    default: return 0.0;
  }
}

double EntropyFunction::domain_hi() const {
  return family_ == EntropyFamily::FermiDirac ? 1.0 : kInf;
}

bool EntropyFunction::lo_in_domain() const {
  // phi(0) is finite except for Burg, where -ln u blows up.
  return family_ != EntropyFamily::Burg &&
         family_ != EntropyFamily::Quadratic;
}

bool EntropyFunction::hi_in_domain() const {
  return family_ == EntropyFamily::FermiDirac;
}

bool EntropyFunction::in_domain(double u) const {
  if (!std::isfinite(u)) return false;
  if (u < domain_lo() || u > domain_hi()) return false;
  if (u == domain_lo() && !lo_in_domain()) return false;
  if (u == domain_hi() && !hi_in_domain()) return false;
  return true;
}

bool EntropyFunction::in_closure(double u) const {
  return std::isfinite(u) && u >= domain_lo() && u <= domain_hi();
}

bool EntropyFunction::in_interior(double u) const {
  return std::isfinite(u) && u > domain_lo() && u < domain_hi();
}

ExtReal EntropyFunction::value(double u) const {
  if (std::isnan(u)) throw DomainError("phi: NaN argument");
  if (!in_domain(u)) return ExtReal::pos_inf();
  switch (family_) {
    case EntropyFamily::BoltzmannShannon:
      return u == 0.0 ? ExtReal(0.0) : ExtReal(u * std::log(u));
    case EntropyFamily::BoltzmannShannonMinusU:
      return u == 0.0 ? ExtReal(0.0) : ExtReal(u * std::log(u) - u);
    case EntropyFamily::Burg:
      return ExtReal(-std::log(u));
    case EntropyFamily::Quadratic:
      return ExtReal(0.5 * u * u);
    case EntropyFamily::FermiDirac:
      if (u == 0.0 || u == 1.0) return ExtReal(0.0);
      return ExtReal(u * std::log(u) + (1.0 - u) * std::log(1.0 - u));
  }
  return ExtReal::pos_inf();
}

ExtReal EntropyFunction::derivative(double u) const {
  if (std::isnan(u) || !in_closure(u)) domain_error(*this, "phi'", u);
  switch (family_) {
    case EntropyFamily::BoltzmannShannon:
      return u == 0.0 ? ExtReal::neg_inf() : ExtReal(1.0 + std::log(u));
    case EntropyFamily::BoltzmannShannonMinusU:
      return u == 0.0 ? ExtReal::neg_inf() : ExtReal(std::log(u));
    case EntropyFamily::Burg:
      return u == 0.0 ? ExtReal::neg_inf() : ExtReal(-1.0 / u);
    case EntropyFamily::Quadratic:
      return ExtReal(u);
    case EntropyFamily::FermiDirac:
      if (u == 0.0) return ExtReal::neg_inf();
      if (u == 1.0) return ExtReal::pos_inf();
      return ExtReal(std::log(u) - std::log(1.0 - u));
  }
  return ExtReal(0.0);
}

double EntropyFunction::second_derivative(double u) const {
  if (std::isnan(u) || !in_interior(u)) domain_error(*this, "phi''", u);
  switch (family_) {
    case EntropyFamily::BoltzmannShannon:
    case EntropyFamily::BoltzmannShannonMinusU:
      return 1.0 / u;
    case EntropyFamily::Burg:
      return 1.0 / (u * u);
    case EntropyFamily::Quadratic:
      return 1.0;
    case EntropyFamily::FermiDirac:
      return 1.0 / (u * (1.0 - u));
  }
  return 0.0;
}

double EntropyFunction::link_domain_hi() const {
  return family_ == EntropyFamily::Burg ? 0.0 : kInf;
}

bool EntropyFunction::in_link_domain(double s) const {
  return std::isfinite(s) && s < link_domain_hi();
}

double EntropyFunction::link(double s) const {
  if (std::isnan(s) || !in_link_domain(s)) domain_error(*this, "(phi*)'", s);
  switch (family_) {
    case EntropyFamily::BoltzmannShannon:
      return clamp_finite(std::exp(s - 1.0));
    case EntropyFamily::BoltzmannShannonMinusU:
      return clamp_finite(std::exp(s));
    case EntropyFamily::Burg:
      return clamp_finite(-1.0 / s);
    case EntropyFamily::Quadratic:
      return s;
    case EntropyFamily::FermiDirac:
      // sigma(s), evaluated from the side that cannot overflow.
      return s >= 0.0 ? 1.0 / (1.0 + std::exp(-s))
                      : std::exp(s) / (1.0 + std::exp(s));
  }
  return 0.0;
}

double EntropyFunction::link_derivative(double s) const {
  if (std::isnan(s) || !in_link_domain(s)) domain_error(*this, "(phi*)''", s);
  switch (family_) {
    case EntropyFamily::BoltzmannShannon:
      return clamp_finite(std::exp(s - 1.0));
    case EntropyFamily::BoltzmannShannonMinusU:
      return clamp_finite(std::exp(s));
    case EntropyFamily::Burg:
      return clamp_finite(1.0 / (s * s));
    case EntropyFamily::Quadratic:
      return 1.0;
    case EntropyFamily::FermiDirac: {
      const double sig = link(s);
      return sig * (1.0 - sig);
    }
  }
  return 0.0;
}

}  // namespace entromin
