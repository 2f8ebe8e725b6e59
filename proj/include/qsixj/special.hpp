#pragma once

#include <complex>

namespace qsixj {

/// Clausen function Cl_2(x) = -int_0^x log|2 sin(t/2)| dt, 2pi-periodic and odd.
double clausen2(double x);

/// Lobachevsky function Lambda(theta) = -int_0^theta log|2 sin t| dt = Cl_2(2 theta) / 2.
/// Odd and pi-periodic; absolute error below 1e-14 on the reduced range.
double lobachevsky(double theta);

/// Principal branch of the dilogarithm, Li_2(z) = -int_0^z log(1-u)/u du,
/// with the cut along the real interval (1, inf). Points on the cut throw
/// std::domain_error.
std::complex<double> dilog(std::complex<double> z);

}  // namespace qsixj
