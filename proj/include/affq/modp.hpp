#pragma once

#include <cstdint>
#include <vector>

#include "affq/error.hpp"
#include "affq/laurent.hpp"

namespace affq {

/// Prime field arithmetic at word size, used for homology rank computations
/// after specialising v to a random unit.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p) : p_(p) {}

    std::uint64_t p() const { return p_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(a) * b) % p_);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        a %= p_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const {
        if (a % p_ == 0) throw internal_error("PrimeField: inverse of zero");
        return pow(a, p_ - 2);
    }

    // Evaluate a Laurent scalar at v = val.
    std::uint64_t eval(const LaurentScalar& s, std::uint64_t val) const {
        std::uint64_t acc = 0;
        for (const auto& [e, c] : s.coeffs()) {
            BigInt cm = c % BigInt(p_);
            if (cm < 0) cm += BigInt(p_);
            std::uint64_t cv = static_cast<std::uint64_t>(cm);
            std::uint64_t ve = e >= 0 ? pow(val, static_cast<std::uint64_t>(e))
                                      : inv(pow(val, static_cast<std::uint64_t>(-e)));
            acc = add(acc, mul(cv, ve));
        }
        return acc;
    }

    // Row-echelon rank by Gaussian elimination; destroys its argument.
    std::size_t rank(std::vector<std::vector<std::uint64_t>> m) const {
        std::size_t rows = m.size();
        if (rows == 0) return 0;
        std::size_t cols = m[0].size();
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < rows; ++c) {
            std::size_t piv = r;
            while (piv < rows && m[piv][c] == 0) ++piv;
            if (piv == rows) continue;
            std::swap(m[piv], m[r]);
            std::uint64_t pi = inv(m[r][c]);
            for (std::size_t j = c; j < cols; ++j) m[r][j] = mul(m[r][j], pi);
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || m[i][c] == 0) continue;
                std::uint64_t f = m[i][c];
                for (std::size_t j = c; j < cols; ++j)
                    m[i][j] = sub(m[i][j], mul(f, m[r][j]));
            }
            ++r;
        }
        return r;
    }

private:
    std::uint64_t p_;
};

} // namespace affq
