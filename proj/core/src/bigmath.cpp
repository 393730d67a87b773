#include "shiftlab/bigmath.hpp"

#include <cmath>
#include <limits>

namespace shiftlab {

BigRat rational_from_double(double x)
{
    if (!std::isfinite(x)) throw std::domain_error("rational_from_double: non-finite");
    if (x == 0.0) return BigRat(0);
    int exp = 0;
    const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5,1)
    // 53 mantissa bits make mant*2^53 an exact integer.
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    BigRat r(scaled);
    const int e = exp - 53;
    if (e >= 0)
        r *= BigRat(BigInt(1) << e);
    else
        r /= BigRat(BigInt(1) << -e);
    return r;
}

BigIntMatrix BigIntMatrix::identity(int dim)
{
    BigIntMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
}

BigIntMatrix BigIntMatrix::mul(const BigIntMatrix& o) const
{
    BigIntMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const BigInt& aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < n; ++j)
                if (o.at(k, j) != 0) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

BigIntMatrix BigIntMatrix::pow(unsigned long k) const
{
    BigIntMatrix result = identity(n);
    BigIntMatrix base = *this;
    while (k > 0) {
        if (k & 1UL) result = result.mul(base);
        base = base.mul(base);
        k >>= 1UL;
    }
    return result;
}

BigInt BigIntMatrix::entry_sum() const
{
    BigInt s = 0;
    for (const BigInt& x : a) s += x;
    return s;
}

BigInt BigIntMatrix::trace() const
{
    BigInt s = 0;
    for (int i = 0; i < n; ++i) s += at(i, i);
    return s;
}

PerronBracket perron_bracket(const std::vector<std::vector<double>>& m, int refine_steps)
{
    const int n = static_cast<int>(m.size());
    if (n == 0) throw std::invalid_argument("perron_bracket: empty matrix");
    std::vector<double> v(n, 1.0);
    for (int it = 0; it < refine_steps; ++it) {
        std::vector<double> w(n, 0.0);
        double norm = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) w[i] += m[i][j] * v[j];
            norm = std::max(norm, w[i]);
        }
        if (norm <= 0.0) throw std::domain_error("perron_bracket: matrix is not irreducible (zero iterate)");
        for (int i = 0; i < n; ++i) v[i] = w[i] / norm;
    }
    // Collatz–Wielandt: for any positive u, min_i (Mu)_i/u_i <= lambda <= max_i (Mu)_i/u_i.
    // Rationalize v (clamped away from 0) and evaluate the quotients exactly.
    std::vector<BigRat> u(n);
    for (int i = 0; i < n; ++i) u[i] = rational_from_double(std::max(v[i], 1e-12));
    std::vector<BigRat> mu(n, BigRat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m[i][j] != 0.0) mu[i] += rational_from_double(m[i][j]) * u[j];
    PerronBracket b{mu[0] / u[0], mu[0] / u[0]};
    for (int i = 1; i < n; ++i) {
        const BigRat q = mu[i] / u[i];
        if (q < b.lo) b.lo = q;
        if (q > b.hi) b.hi = q;
    }
    return b;
}

PerronData perron_data(const std::vector<std::vector<double>>& m, int iters)
{
    const int n = static_cast<int>(m.size());
    PerronData d;
    d.right.assign(n, 1.0);
    d.left.assign(n, 1.0);
    double lam = 0.0;
    for (int it = 0; it < iters; ++it) {
        std::vector<double> r(n, 0.0), l(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                r[i] += m[i][j] * d.right[j];
                l[j] += d.left[i] * m[i][j];
            }
        double rn = 0.0, ln = 0.0;
        for (int i = 0; i < n; ++i) { rn += r[i]; ln += l[i]; }
        if (rn <= 0.0 || ln <= 0.0) throw std::domain_error("perron_data: matrix not primitive");
        lam = rn;  // with right normalized to sum 1, sum(Mv) estimates lambda
        for (int i = 0; i < n; ++i) { d.right[i] = r[i] / rn; d.left[i] = l[i] / ln; }
    }
    d.lambda = lam;
    return d;
}

}  // namespace shiftlab
