#include "semsans/spin_op.hpp"

#include <cmath>

namespace semsans {

namespace {
const cplx I{0.0, 1.0};
}

SpinOperator SpinOperator::identity() { return {{cplx(1), cplx(0), cplx(0), cplx(1)}}; }
SpinOperator SpinOperator::zero() { return {}; }
SpinOperator SpinOperator::sigma_x() { return {{cplx(0), cplx(1), cplx(1), cplx(0)}}; }
SpinOperator SpinOperator::sigma_y() { return {{cplx(0), -I, I, cplx(0)}}; }
SpinOperator SpinOperator::sigma_z() { return {{cplx(1), cplx(0), cplx(0), cplx(-1)}}; }

SpinOperator SpinOperator::sigma_n(double nx, double ny, double nz) {
    SpinOperator s;
    s(0, 0) = cplx(nz, 0.0);
    s(0, 1) = cplx(nx, -ny);
    s(1, 0) = cplx(nx, ny);
    s(1, 1) = cplx(-nz, 0.0);
    return s;
}

SpinOperator SpinOperator::dagger() const {
    SpinOperator r;
    r(0, 0) = std::conj((*this)(0, 0));
    r(0, 1) = std::conj((*this)(1, 0));
    r(1, 0) = std::conj((*this)(0, 1));
    r(1, 1) = std::conj((*this)(1, 1));
    return r;
}

SpinOperator SpinOperator::operator*(const SpinOperator& o) const {
    SpinOperator r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j);
    return r;
}

SpinOperator SpinOperator::operator+(const SpinOperator& o) const {
    SpinOperator r;
    for (int k = 0; k < 4; ++k) r.m[k] = m[k] + o.m[k];
    return r;
}

SpinOperator SpinOperator::operator-(const SpinOperator& o) const {
    SpinOperator r;
    for (int k = 0; k < 4; ++k) r.m[k] = m[k] - o.m[k];
    return r;
}

SpinOperator SpinOperator::operator*(cplx s) const {
    SpinOperator r;
    for (int k = 0; k < 4; ++k) r.m[k] = m[k] * s;
    return r;
}

double SpinOperator::max_abs_diff(const SpinOperator& o) const {
    double d = 0.0;
    for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(m[k] - o.m[k]));
    return d;
}

Spinor operator*(const SpinOperator& U, const Spinor& psi) {
    return {U(0, 0) * psi[0] + U(0, 1) * psi[1],
            U(1, 0) * psi[0] + U(1, 1) * psi[1]};
}

cplx inner(const Spinor& a, const Spinor& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

double norm2(const Spinor& psi) { return std::norm(psi[0]) + std::norm(psi[1]); }

Spinor bloch_spinor(double theta, double phi) {
    return {cplx(std::cos(theta / 2.0), 0.0),
            std::exp(I * phi) * std::sin(theta / 2.0)};
}

std::array<double, 3> bloch_vector(const Spinor& psi) {
    const cplx up = psi[0], dn = psi[1];
    const cplx cross = std::conj(up) * dn;
    return {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(up) - std::norm(dn)};
}

double unitarity_check(const SpinOperator& U) {
    const SpinOperator p = U.dagger() * U;
    return p.max_abs_diff(SpinOperator::identity());
}

}  // namespace semsans
