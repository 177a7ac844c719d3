#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace sic {

// Arbitrary-precision real with per-thread default precision (MPFR backed).
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline unsigned bits_to_digits(int bits) {
    // ceil(bits * log10(2)) plus a couple of guard digits
    return static_cast<unsigned>(bits * 0.30103) + 4;
}

// Sets the thread-default MPFR precision for its lifetime.
class PrecisionGuard {
public:
    explicit PrecisionGuard(int bits)
        : saved_(Real::default_precision()) {
        Real::default_precision(bits_to_digits(bits));
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

// Minimal complex type over Real. std::complex is not specified for
// user-defined scalars, so the handful of operations needed live here.
struct Complex {
    Real re, im;

    Complex() : re(0), im(0) {}
    Complex(Real r) : re(std::move(r)), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(double r, double i = 0.0) : re(r), im(i) {}

    Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
    Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
    Complex operator-() const { return {-re, -im}; }
    Complex operator*(const Complex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Complex operator*(const Real& s) const { return {re * s, im * s}; }
    Complex operator/(const Real& s) const { return {re / s, im / s}; }
    Complex operator/(const Complex& o) const {
        Real n = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }
    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }
};

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
inline Real norm_sq(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Complex& z) { return sqrt(norm_sq(z)); }
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }
inline Complex polar(const Real& r, const Real& theta) {
    return {r * cos(theta), r * sin(theta)};
}
inline Complex unit_phase(const Real& theta) { return {cos(theta), sin(theta)}; }

using CVector = std::vector<Complex>;

struct CMatrix {
    int rows = 0, cols = 0;
    std::vector<Complex> a;

    CMatrix() = default;
    CMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Complex& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Complex& operator()(int i, int j) const {
        return a[static_cast<size_t>(i) * cols + j];
    }

    static CMatrix identity(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = Complex(Real(1));
        return m;
    }
};

CMatrix mat_mul(const CMatrix& x, const CMatrix& y);
CMatrix mat_adjoint(const CMatrix& x);
Complex mat_trace(const CMatrix& x);
CVector mat_vec(const CMatrix& x, const CVector& v);
Complex inner(const CVector& x, const CVector& y);  // conjugate-linear in x
Real vec_norm(const CVector& v);
void normalize(CVector& v);

// max_ij |x_ij - y_ij|
Real max_abs_diff(const CMatrix& x, const CMatrix& y);

// Exact decimal round-trip for serialized numerics.
std::string real_to_string(const Real& x);
Real real_from_string(const std::string& s);

// pi at the current thread-default precision
Real const_pi();

}  // namespace sic
