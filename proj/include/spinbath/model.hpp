// model.hpp: physical parameters, Hamiltonian eigensystem, transition operators,
// bath spectral functions and the four rate constants that drive all dynamics.
//
// Conventions: hbar = k_B = 1. Computational basis ordering is
// {|00>, |01>, |10>, |11>} with |0> the spin ground state, so |1,0> means spin 1
// excited and spin 2 in its ground state.

#pragma once

#include "spinbath/linalg.hpp"

#include <array>

namespace spinbath {

struct ModelParams {
    double eps1{2.0};     // energy of spin 1
    double eps2{1.1};     // energy of spin 2
    double K{1.0};        // spin-spin coupling, must be > 0
    double gamma1{1e-3};  // bath 1 coupling (frequency independent)
    double gamma2{1e-3};  // bath 2 coupling
    double T1{0.2};       // bath 1 temperature
    double T2{0.5};       // bath 2 temperature

    // Throws DomainError if any field invariant is violated.
    void validate() const;
};

struct EigenSystem {
    // lambda[0..3] = lambda_1..lambda_4 = -(e1+e2)/2, (e1+e2)/2, kappa, -kappa
    std::array<double, 4> lambda{};
    double delta_eps{0.0};  // eps1 - eps2
    double kappa{0.0};      // sqrt(K^2 + delta_eps^2 / 4)
    double theta{0.0};      // atan2(2K, delta_eps), in (0, pi)
    double omega1{0.0};     // lambda_2 - lambda_3
    double omega2{0.0};     // lambda_2 + lambda_3
    Mat4c eigvecs;          // columns |lambda_1>..|lambda_4> in the computational basis

    double cos_half() const;
    double sin_half() const;

    // H_S written in the eigenbasis (diagonal) and in the computational basis.
    Mat4c hamiltonian_eigen() const;
    Mat4c hamiltonian_computational() const;
};

// Direct construction of H_S in the computational basis, independent of the
// eigensystem.
Mat4c system_hamiltonian(const ModelParams& params);

// Throws NonPositiveTransitionFrequency when omega_1 <= 0.
EigenSystem eigensystem(const ModelParams& params);

// One jump operator V_{j,mu} of a bath, written in the eigenbasis. Every V is a
// lowering operator: [H_S, V] = -omega V with omega > 0 its Bohr frequency.
struct TransitionOperator {
    Mat4c op;
    double omega{0.0};
    int bath{1};
};

// V_{j,mu}: bath j in {1,2}, label mu in {1,2}.
//   V11 =  c (|l1><l3| + |l4><l2|)   V12 = s (|l3><l2| - |l1><l4|)
//   V21 =  s (|l1><l3| - |l4><l2|)   V22 = c (|l3><l2| + |l1><l4|)
// V_{j,1} lower by lambda_3 - lambda_1 = omega_2, V_{j,2} by lambda_2 - lambda_3 = omega_1.
struct TransitionOperators {
    TransitionOperator V11, V12, V21, V22;

    std::array<const TransitionOperator*, 4> all() const { return {&V11, &V12, &V21, &V22}; }
};

TransitionOperators transition_operators(const EigenSystem& es);

// Bose-Einstein occupation 1/(exp(omega/T) - 1). DomainError unless omega, T > 0.
double planck_occupation(double omega, double T);

// J^{(j)}(omega): gamma_j n_j(omega) for omega > 0, gamma_j (n_j(|omega|) + 1)
// for omega < 0. DomainError on omega == 0 or bath not in {1, 2}.
double spectral_density(int bath, double omega, const ModelParams& params);

// Decay (plus) and excitation (minus) rates of the two transition families.
struct Rates {
    double x1p{0.0};  // X_1^+
    double x1m{0.0};  // X_1^-
    double y2p{0.0};  // Y_2^+
    double y2m{0.0};  // Y_2^-
    double x1{0.0};   // X_1 = X_1^+ + X_1^-
    double y2{0.0};   // Y_2 = Y_2^+ + Y_2^-
};

// X rates belong to the V_{j,1} family (frequency omega_2), Y rates to the
// V_{j,2} family (frequency omega_1):
//   X^{-/+} = 2 c^2 J1(+/-w) + 2 s^2 J2(+/-w),  Y^{-/+} = 2 s^2 J1(+/-w) + 2 c^2 J2(+/-w)
Rates rates(const EigenSystem& es, const ModelParams& params);

// Same rates through the delta_eps / sqrt(4K^2 + delta_eps^2) parameterization.
Rates rates_mixing_form(const EigenSystem& es, const ModelParams& params);

}  // namespace spinbath
