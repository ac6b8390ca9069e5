// SPDX-License-Identifier: Apache-2.0
//
// repstab — feedback-stability analysis for networks of interacting
// wireless repeaters
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace repstab {

/// Determinant via LU with partial (row) pivoting on maximum modulus.
/// A matrix with an exactly zero pivot yields determinant exactly 0;
/// near-singular inputs are the normal use case, not an error.
/// Throws std::invalid_argument on non-square or non-finite input.
template <typename Derived>
typename Derived::Scalar lu_determinant(const Eigen::MatrixBase<Derived>& m)
{
    if (m.rows() == 0 || m.rows() != m.cols())
        throw std::invalid_argument("lu_determinant: matrix must be square and non-empty");
    if (!m.allFinite())
        throw std::invalid_argument("lu_determinant: matrix has a non-finite entry");
    Eigen::PartialPivLU<typename Derived::PlainObject> lu(m.derived());
    return lu.determinant();
}

/// Direct O(N^2) DFT, out[n] = sum_i v[i] e^{-j 2 pi i n / N}.
/// N is small in all uses here (circulant eigenvalues), so no FFT.
template <typename Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic>
dft(const Eigen::MatrixBase<Derived>& v)
{
    using Scalar = typename Derived::Scalar;
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    static_assert(Eigen::NumTraits<Scalar>::IsComplex, "dft expects a complex vector");
    const Eigen::Index n = v.size();
    if (n == 0)
        throw std::invalid_argument("dft: empty input");
    Eigen::Vector<Scalar, Eigen::Dynamic> out(n);
    const Real step = Real(2) * EIGEN_PI / Real(n);
    for (Eigen::Index bin = 0; bin < n; ++bin) {
        Scalar acc(0);
        for (Eigen::Index i = 0; i < n; ++i) {
            // reduce i*bin mod n first so the angle stays small and accurate
            const Real angle = -step * Real((i * bin) % n);
            acc += v(i) * Scalar(std::polar(Real(1), angle));
        }
        out(bin) = acc;
    }
    return out;
}

/// Inverse of dft: conjugate-kernel transform divided by N.
template <typename Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic>
idft(const Eigen::MatrixBase<Derived>& v)
{
    using Scalar = typename Derived::Scalar;
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    static_assert(Eigen::NumTraits<Scalar>::IsComplex, "idft expects a complex vector");
    const Eigen::Index n = v.size();
    if (n == 0)
        throw std::invalid_argument("idft: empty input");
    Eigen::Vector<Scalar, Eigen::Dynamic> out(n);
    const Real step = Real(2) * EIGEN_PI / Real(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Scalar acc(0);
        for (Eigen::Index bin = 0; bin < n; ++bin) {
            const Real angle = step * Real((i * bin) % n);
            acc += v(bin) * Scalar(std::polar(Real(1), angle));
        }
        out(i) = acc / Real(n);
    }
    return out;
}

/// Bisection on a bracketing interval: f(lo) and f(hi) must differ in sign.
/// Returns the midpoint of the final bracket, whose width is <= tol.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol)
{
    if (!(lo < hi))
        throw std::invalid_argument("bisect: requires lo < hi");
    if (!(tol > 0.0))
        throw std::invalid_argument("bisect: tol must be > 0");
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw std::invalid_argument("bisect: no sign change over [lo, hi]");
    while (hi - lo > tol) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi)
            break;  // bracket is at floating-point resolution
        const double fm = f(mid);
        if (fm == 0.0)
            return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

}  // namespace repstab
