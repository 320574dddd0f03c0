#include "bandgas/scaled.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bandgas {

double ldexp_safe(double x, long e) {
    if (x == 0.0) return 0.0;
    if (e > 4000) return std::copysign(std::numeric_limits<double>::infinity(), x);
    if (e < -4000) return std::copysign(0.0, x);
    return std::ldexp(x, static_cast<int>(e));
}

ScaledComplex::ScaledComplex(cplx mantissa, long exponent) : m_(mantissa), e_(exponent) {
    normalize();
}

void ScaledComplex::normalize() {
    double big = std::max(std::fabs(m_.real()), std::fabs(m_.imag()));
    if (big == 0.0) {
        m_ = cplx(0.0, 0.0);
        e_ = 0;
        return;
    }
    if (!std::isfinite(big)) return;
    int k = 0;
    std::frexp(big, &k);
    m_ = cplx(std::ldexp(m_.real(), -k), std::ldexp(m_.imag(), -k));
    e_ += k;
}

ScaledComplex ScaledComplex::from_exp(cplx w) {
    double re = w.real();
    if (re == -std::numeric_limits<double>::infinity()) return ScaledComplex();
    double k = std::floor(re / std::log(2.0));
    double frac = re - k * std::log(2.0);
    cplx m = std::exp(frac) * cplx(std::cos(w.imag()), std::sin(w.imag()));
    return ScaledComplex(m, static_cast<long>(k));
}

cplx ScaledComplex::value() const {
    return {ldexp_safe(m_.real(), e_), ldexp_safe(m_.imag(), e_)};
}

double ScaledComplex::log2_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log2(std::abs(m_)) + static_cast<double>(e_);
}

double ScaledComplex::log_abs() const { return log2_abs() * std::log(2.0); }

ScaledComplex ScaledComplex::norm() const { return ScaledComplex(std::norm(m_), 2 * e_); }

ScaledComplex ScaledComplex::operator*(const ScaledComplex& o) const {
    return ScaledComplex(m_ * o.m_, e_ + o.e_);
}

ScaledComplex ScaledComplex::operator*(cplx s) const { return ScaledComplex(m_ * s, e_); }

ScaledComplex ScaledComplex::operator/(const ScaledComplex& o) const {
    return ScaledComplex(m_ / o.m_, e_ - o.e_);
}

ScaledComplex ScaledComplex::operator+(const ScaledComplex& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (e_ >= o.e_) {
        long d = o.e_ - e_;
        if (d < -1100) return *this;
        cplx sm(std::ldexp(o.m_.real(), static_cast<int>(d)), std::ldexp(o.m_.imag(), static_cast<int>(d)));
        return ScaledComplex(m_ + sm, e_);
    }
    return o + *this;
}

ScaledComplex ScaledComplex::operator-(const ScaledComplex& o) const { return *this + (-o); }

}  // namespace bandgas
