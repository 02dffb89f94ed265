#pragma once

#include <string_view>

#include "entromin/ext_real.hpp"

namespace entromin {

enum class EntropyFamily {
  BoltzmannShannon,        // u ln u on [0, inf)
  BoltzmannShannonMinusU,  // u ln u - u on [0, inf)
  Burg,                    // -ln u on (0, inf)
  Quadratic,               // u^2/2 on R
  FermiDirac,              // u ln u + (1-u) ln(1-u) on [0, 1]
};

// Strictly convex entropy integrand phi together with its derivative, the
// link function (phi*)' inverting phi', and domain endpoint behavior.
class EntropyFunction {
 public:
  explicit EntropyFunction(EntropyFamily family) : family_(family) {}
  static EntropyFunction from_name(std::string_view name);

  EntropyFamily family() const { return family_; }
  std::string_view name() const;

  // phi(u). Total for finite u: +inf outside dom phi.
  ExtReal value(double u) const;

  // phi'(u) for u in the closure of dom phi; finite endpoints return the
  // one-sided limit value, possibly +-inf. Throws DomainError elsewhere.
  ExtReal derivative(double u) const;

  // phi''(u) for u in int(dom phi).
  double second_derivative(double u) const;

  // (phi*)'(s) for s in int(dom phi*): the unique u in int(dom phi) with
  // phi'(u) = s. Clamped to the largest finite double on overflow.
  double link(double s) const;

  // (phi*)''(s) = 1/phi''(link(s)) for s in int(dom phi*), clamped likewise.
  double link_derivative(double s) const;

  double domain_lo() const;  // inf dom phi, may be -inf
  double domain_hi() const;  // sup dom phi, may be +inf
  bool lo_in_domain() const;
  bool hi_in_domain() const;

  bool in_domain(double u) const;
  bool in_closure(double u) const;
  bool in_interior(double u) const;

  // int(dom phi*) = (-inf, link_domain_hi()), the whole line except for Burg.
  double link_domain_hi() const;
  bool in_link_domain(double s) const;

 private:
  EntropyFamily family_;
};

}  // namespace entromin
