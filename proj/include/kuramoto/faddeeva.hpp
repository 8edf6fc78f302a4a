#pragma once

#include <complex>

namespace kuramoto {

using Complex = std::complex<double>;

// Faddeeva function w(z) = exp(-z^2) erfc(-iz), entire in z.
Complex faddeeva_w(Complex z);

// Dawson-type scaled form for real x: Im w(x) = 2/sqrt(pi) * dawson(x).
double dawson(double x);

}  // namespace kuramoto
