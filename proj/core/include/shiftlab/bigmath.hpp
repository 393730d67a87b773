// Exact arithmetic helpers: big integers for word counts (which overflow
// 64 bits at large depth on big alphabets), rationals for measure tables,
// and certified Perron-root brackets for nonnegative matrices.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace shiftlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }
inline double to_double(const BigRat& x) { return x.convert_to<double>(); }

inline double log_big(const BigInt& x)
{
    if (x <= 0) throw std::domain_error("log of nonpositive big integer");
    // Split off the exponent so the conversion never overflows double range.
    const std::size_t bits = msb(x);
    if (bits < 900) return std::log(to_double(x));
    const BigInt shifted = x >> (bits - 64);
    return std::log(to_double(shifted)) + static_cast<double>(bits - 64) * std::log(2.0);
}

// Exact rational from a double (doubles are dyadic rationals).
BigRat rational_from_double(double x);

// Square matrices with exact integer entries, used for the #L_n and Per_n
// matrix oracles of vertex SFTs.
struct BigIntMatrix {
    int n = 0;
    std::vector<BigInt> a;  // row-major

    explicit BigIntMatrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim) {}

    BigInt& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const BigInt& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    static BigIntMatrix identity(int dim);
    BigIntMatrix mul(const BigIntMatrix& o) const;
    BigIntMatrix pow(unsigned long k) const;

    BigInt entry_sum() const;
    BigInt trace() const;
};

// Certified bracket [lo, hi] containing the Perron root of a nonnegative
// irreducible matrix, via Collatz–Wielandt quotients of a rational positive
// vector (refined by power iteration).
struct PerronBracket {
    BigRat lo, hi;
    double mid() const { return 0.5 * (to_double(lo) + to_double(hi)); }
    double log_mid() const { return std::log(mid()); }
};

PerronBracket perron_bracket(const std::vector<std::vector<double>>& m, int refine_steps = 200);

// Power-iteration Perron data for a nonnegative primitive matrix: the root
// together with right and left eigenvectors (normalized, positive).
struct PerronData {
    double lambda = 0.0;
    std::vector<double> right;
    std::vector<double> left;
};

PerronData perron_data(const std::vector<std::vector<double>>& m, int iters = 2000);

}  // namespace shiftlab
