#pragma once

#include <complex>

namespace bandgas {

using cplx = std::complex<double>;

// mantissa * 2^exponent with |mantissa| in [1/2, 2) or exactly zero
class ScaledComplex {
public:
    ScaledComplex() = default;
    ScaledComplex(cplx mantissa, long exponent = 0);

    static ScaledComplex from_exp(cplx w);  // e^w without overflow

    cplx mantissa() const { return m_; }
    long exponent() const { return e_; }
    bool is_zero() const { return m_ == cplx(0.0, 0.0); }

    cplx value() const;        // may underflow to 0 or overflow to inf
    double log2_abs() const;   // -inf for zero
    double log_abs() const;
    ScaledComplex norm() const;  // |z|^2 as a real-valued ScaledComplex
    ScaledComplex conj() const { return ScaledComplex(std::conj(m_), e_); }

    ScaledComplex operator*(const ScaledComplex& o) const;
    ScaledComplex operator*(cplx s) const;
    ScaledComplex operator/(const ScaledComplex& o) const;
    ScaledComplex operator+(const ScaledComplex& o) const;
    ScaledComplex operator-(const ScaledComplex& o) const;
    ScaledComplex operator-() const { return ScaledComplex(-m_, e_); }
    ScaledComplex& operator+=(const ScaledComplex& o) { return *this = *this + o; }
    ScaledComplex& operator*=(const ScaledComplex& o) { return *this = *this * o; }

private:
    void normalize();
    cplx m_{0.0, 0.0};
    long e_ = 0;
};

// x * 2^e with overflow clamped to +-inf and underflow to 0
double ldexp_safe(double x, long e);

}  // namespace bandgas
