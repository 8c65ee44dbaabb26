#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <vector>

namespace hft {

// Element of the cyclotomic field Q(zeta_m), stored in the power basis
// 1, zeta, ..., zeta^(phi(m)-1) and reduced modulo the m-th cyclotomic
// polynomial. Conductor 1 is the plain rationals. A value whose
// irrational coefficients all vanish is demoted to conductor 1, so the
// rationals have exactly one representation.
class Scalar {
public:
    Scalar();
    Scalar(long v);  // NOLINT(google-explicit-constructor)
    Scalar(long num, long den);
    explicit Scalar(const mpq_class& q);

    static Scalar zeta(int m, long k = 1);
    // Accepts "p", "p/q" and sums of "p/q*z^k" terms in the given conductor.
    static Scalar parse(const std::string& text, int conductor = 1);

    int conductor() const { return m_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const { return m_ == 1; }
    const mpq_class& rational() const;  // requires is_rational()

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar inverse() const;  // throws std::domain_error on zero

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Total order on canonical forms; used only for deterministic tie-breaks.
    friend bool lex_less(const Scalar& a, const Scalar& b);

    std::string str() const;

private:
    Scalar(int m, std::vector<mpq_class> c);
    void canonicalize();
    Scalar lifted(int target) const;

    int m_ = 1;
    std::vector<mpq_class> c_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Euler phi and the integer coefficients of the m-th cyclotomic polynomial
// (ascending powers, monic).
int euler_phi(int m);
const std::vector<long>& cyclotomic_poly(int m);

}  // namespace hft
