#pragma once

namespace pmchemo {

// Normalized moments of the exponential ansatz exp(a + b*v) on 1D velocity
// domains. Everything reduces to moments of exp(x*t) on t in [-1,1]:
//   langevin(x)      = <t>   = coth(x) - 1/x
//   second_ratio(x)  = <t^2> = 1 - 2*langevin(x)/x
//   third_ratio(x)   = <t^3>
// with series evaluation near x = 0 where the closed forms cancel.
double langevin(double x);
double langevin_prime(double x);
double second_ratio(double x);
double second_ratio_prime(double x);
double third_ratio(double x);

struct ExpMoments1D {
  double u;      // normalized first moment
  double w;      // normalized second moment
  double du_db;  // = variance of v under the ansatz
  double dw_db;  // = <v^3> - w*u
};

// Ansatz on V+ = [0,1]. The minus half-line follows by v -> -v symmetry:
// u_minus(b) = -u_plus(-b), w_minus(b) = w_plus(-b).
ExpMoments1D half_plus_exp_moments(double b);

// Ansatz on V = [-1,1] (full-moment M1): u = langevin(b), w = second_ratio(b).
ExpMoments1D full_exp_moments(double b);

}  // namespace pmchemo
