#pragma once

#include <map>
#include <sstream>
#include <string>

#include "affq/linalg.hpp"

namespace affq {

/// Exact Laurent polynomial in v with arbitrary-precision integer coefficients.
class LaurentScalar {
public:
    LaurentScalar() = default;

    static LaurentScalar zero() { return LaurentScalar(); }
    static LaurentScalar one() { return monomial(1, 0); }
    static LaurentScalar v_power(Int e) { return monomial(1, e); }

    static LaurentScalar monomial(BigInt c, Int e) {
        LaurentScalar r;
        if (c != 0) r.coeffs_[e] = std::move(c);
        return r;
    }

    bool is_zero() const { return coeffs_.empty(); }
    const std::map<Int, BigInt>& coeffs() const { return coeffs_; }

    BigInt coeff(Int e) const {
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? BigInt(0) : it->second;
    }

    LaurentScalar& operator+=(const LaurentScalar& o) {
        for (const auto& [e, c] : o.coeffs_) {
            BigInt& t = coeffs_[e];
            t += c;
            if (t == 0) coeffs_.erase(e);
        }
        return *this;
    }

    LaurentScalar operator+(const LaurentScalar& o) const {
        LaurentScalar r = *this;
        r += o;
        return r;
    }

    LaurentScalar operator-() const {
        LaurentScalar r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
        return r;
    }

    LaurentScalar operator-(const LaurentScalar& o) const { return *this + (-o); }
    LaurentScalar& operator-=(const LaurentScalar& o) { return *this += -o; }

    LaurentScalar operator*(const LaurentScalar& o) const {
        LaurentScalar r;
        for (const auto& [e1, c1] : coeffs_)
            for (const auto& [e2, c2] : o.coeffs_) {
                BigInt& t = r.coeffs_[e1 + e2];
                t += c1 * c2;
                if (t == 0) r.coeffs_.erase(e1 + e2);
            }
        return r;
    }

    LaurentScalar& operator*=(const LaurentScalar& o) { return *this = *this * o; }

    bool operator==(const LaurentScalar& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const LaurentScalar& o) const { return !(*this == o); }
    bool operator<(const LaurentScalar& o) const { return coeffs_ < o.coeffs_; }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : coeffs_) {
            if (!first && c > 0) os << "+";
            first = false;
            if (e == 0) { os << c; continue; }
            if (c == -1) os << "-";
            else if (c != 1) os << c << "*";
            os << "v";
            if (e != 1) os << "^" << e;
        }
        return os.str();
    }

private:
    std::map<Int, BigInt> coeffs_;
};

} // namespace affq
