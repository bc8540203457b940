#pragma once

//! Physical constants and unit conventions.
//! Internally hbar = c = m = 1, so the Compton wavenumber kappa = 1, the rest
//! energy K = 1, and e|e|/K = -alpha (electron charge e = -sqrt(alpha)).
namespace rdf::PhysConst {

//! CODATA 2018 fine-structure constant
constexpr double alpha = 7.2973525693e-3;

//! Electron rest energy, eV (CODATA 2018)
constexpr double mc2_eV = 510998.95;

constexpr double pi = 3.14159265358979323846;

} // namespace rdf::PhysConst
