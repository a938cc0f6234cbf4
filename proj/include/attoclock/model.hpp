#pragma once

// Closed-form tunnel-ionization model of the attoclock: barrier geometry
// of the field-dressed Coulomb potential and the time delays derived from it.
// Everything is in atomic units.

namespace attoclock {

// Target atom in the single-active-electron picture.
class AtomicSystem {
 public:
  // Throws DomainError unless ip > 0 and z_eff > 0 (both finite).
  AtomicSystem(double ip, double z_eff);

  double ip() const noexcept { return ip_; }
  double z_eff() const noexcept { return z_eff_; }

  friend bool operator==(const AtomicSystem&, const AtomicSystem&) = default;

 private:
  double ip_;
  double z_eff_;
};

// He with I_p = 0.9 au and Z_eff = 1.6875.
AtomicSystem helium();

struct BarrierGeometry {
  double f = 0;        // field strength
  double f_a = 0;      // atomic field strength I_p^2 / (4 Z_eff)
  double delta_z = 0;  // sqrt(I_p^2 - 4 Z_eff F)
  double d_b = 0;      // barrier width delta_z / F
  double x_minus = 0;  // entrance point (I_p - delta_z) / (2F)
  double x_plus = 0;   // exit point (I_p + delta_z) / (2F)
  double x_m = 0;      // maximum of V_eff, sqrt(Z_eff / F)
  double d_c = 0;      // classical width I_p / F
  // V_eff(x_m) = -2 sqrt(Z_eff F). Diagnostic only; the delays use delta_z.
  double apex_potential = 0;
};

struct DelayBreakdown {
  double tau_a = 0;     // 1 / (2 I_p), the value every delay reaches at F_a
  double tau_dion = 0;  // nonadiabatic delay tau_a * xi
  double tau_db = 0;    // barrier delay tau_a * xi * lambda
  double tau_td = 0;    // adiabatic (forward) delay 1 / (2 (I_p - delta_z))
  double tau_ti = 0;    // backward delay 1 / (2 (I_p + delta_z))
  double xi = 0;        // F_a / F
  double lambda = 0;    // delta_z / I_p

  // I_p - delta_z, small in the weak-field limit.
  double epsilon_f(const AtomicSystem& sys) const noexcept;
};

double atomic_field_strength(const AtomicSystem& sys);

// Throws DomainError for f <= 0 and BarrierSuppressed for f > F_a.
// At f == F_a the barrier collapses to delta_z = 0.
BarrierGeometry barrier_geometry(const AtomicSystem& sys, double f);

// sqrt(I_p^2 - 4 Z_eff F) with the argument clamped to zero when it is
// rounding noise near F_a. Same errors as barrier_geometry.
double barrier_height(const AtomicSystem& sys, double f);

// -Z_eff/x - x F. Throws DomainError at x == 0.
double effective_potential(const AtomicSystem& sys, double f, double x);

DelayBreakdown delay_breakdown(const AtomicSystem& sys, double f);

double adiabatic_delay(const AtomicSystem& sys, double f);
double nonadiabatic_delay(const AtomicSystem& sys, double f);
// tau_dB = delta_z / (8 Z_eff F) = d_B / (8 Z_eff).
double barrier_delay(const AtomicSystem& sys, double f);

// tau_dB / tau_dion = delta_z / I_p; tends to 1 for thick barriers, 0 at F_a.
double thick_barrier_ratio(const AtomicSystem& sys, double f);

// 1 / (4 I_p): the backward delay in the weak-field limit.
double weak_measurement_backreaction(const AtomicSystem& sys);

}  // namespace attoclock
