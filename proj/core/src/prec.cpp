#include "sic/prec.hpp"

#include <boost/math/constants/constants.hpp>

namespace sic {

CMatrix mat_mul(const CMatrix& x, const CMatrix& y) {
    CMatrix r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Complex& xik = x(i, k);
            if (xik.re == 0 && xik.im == 0) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

CMatrix mat_adjoint(const CMatrix& x) {
    CMatrix r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r(j, i) = conj(x(i, j));
    return r;
}

Complex mat_trace(const CMatrix& x) {
    Complex t;
    for (int i = 0; i < x.rows; ++i) t += x(i, i);
    return t;
}

CVector mat_vec(const CMatrix& x, const CVector& v) {
    CVector r(x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r[i] += x(i, j) * v[j];
    return r;
}

Complex inner(const CVector& x, const CVector& y) {
    Complex s;
    for (size_t i = 0; i < x.size(); ++i) s += conj(x[i]) * y[i];
    return s;
}

Real vec_norm(const CVector& v) {
    Real s = 0;
    for (const Complex& z : v) s += norm_sq(z);
    return sqrt(s);
}

void normalize(CVector& v) {
    Real n = vec_norm(v);
    for (Complex& z : v) z = z / n;
}

Real max_abs_diff(const CMatrix& x, const CMatrix& y) {
    Real m = 0;
    for (size_t i = 0; i < x.a.size(); ++i) {
        Real d = abs(x.a[i] - y.a[i]);
        if (d > m) m = d;
    }
    return m;
}

std::string real_to_string(const Real& x) {
    return x.str(0, std::ios_base::scientific);
}

Real real_from_string(const std::string& s) { return Real(s); }

Real const_pi() { return boost::math::constants::pi<Real>(); }

}  // namespace sic
