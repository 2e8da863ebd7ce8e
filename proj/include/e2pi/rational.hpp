// e2pi -- exact rational arithmetic on top of GMP integers.
//
// BigRational is the substrate for every finite-n identity in the library:
// canonical form (positive denominator, unit gcd) is restored after every
// operation so that equality, hashing and digests are well defined.

#ifndef E2PI_RATIONAL_HPP
#define E2PI_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace e2pi {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class BigRational {
public:
    BigRational() : num_(0), den_(1) {}

    BigRational(mpz_class n, mpz_class d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_ == 0)
            throw DomainError("BigRational: zero denominator");
        canonicalize();
    }

    BigRational(long n, long d) : BigRational(mpz_class(n), mpz_class(d)) {}

    explicit BigRational(mpz_class n) : num_(std::move(n)), den_(1) {}
    explicit BigRational(long n) : num_(n), den_(1) {}

    const mpz_class& num() const { return num_; }
    const mpz_class& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return sgn(num_); }

    BigRational operator-() const {
        BigRational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend BigRational operator+(const BigRational& a, const BigRational& b) {
        return BigRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend BigRational operator-(const BigRational& a, const BigRational& b) {
        return BigRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    // Multiplication reduces cross-wise (gcd(a.num, b.den), gcd(b.num, a.den))
    // instead of taking a full gcd of the product; for long folds where one
    // side is huge and the other small this is the difference between linear
    // and superlinear per-step cost, and the result is canonical either way.
    friend BigRational operator*(const BigRational& a, const BigRational& b) {
        if (a.num_ == 0 || b.num_ == 0)
            return BigRational();
        mpz_class g1, g2;
        mpz_gcd(g1.get_mpz_t(), a.num_.get_mpz_t(), b.den_.get_mpz_t());
        mpz_gcd(g2.get_mpz_t(), b.num_.get_mpz_t(), a.den_.get_mpz_t());
        BigRational r;
        r.num_ = (a.num_ / g1) * (b.num_ / g2);
        r.den_ = (a.den_ / g2) * (b.den_ / g1);
        return r;
    }
    friend BigRational operator/(const BigRational& a, const BigRational& b) {
        if (b.num_ == 0)
            throw DomainError("BigRational: division by zero");
        if (a.num_ == 0)
            return BigRational();
        mpz_class g1, g2;
        mpz_gcd(g1.get_mpz_t(), a.num_.get_mpz_t(), b.num_.get_mpz_t());
        mpz_gcd(g2.get_mpz_t(), a.den_.get_mpz_t(), b.den_.get_mpz_t());
        BigRational r;
        r.num_ = (a.num_ / g1) * (b.den_ / g2);
        r.den_ = (a.den_ / g2) * (b.num_ / g1);
        if (sgn(r.den_) < 0) {
            r.num_ = -r.num_;
            r.den_ = -r.den_;
        }
        return r;
    }

    BigRational& operator+=(const BigRational& b) { return *this = *this + b; }
    BigRational& operator-=(const BigRational& b) { return *this = *this - b; }
    BigRational& operator*=(const BigRational& b) { return *this = *this * b; }
    BigRational& operator/=(const BigRational& b) { return *this = *this / b; }

    friend bool operator==(const BigRational& a, const BigRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const BigRational& a, const BigRational& b) { return !(a == b); }
    friend bool operator<(const BigRational& a, const BigRational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const BigRational& a, const BigRational& b) { return b < a; }
    friend bool operator<=(const BigRational& a, const BigRational& b) { return !(b < a); }
    friend bool operator>=(const BigRational& a, const BigRational& b) { return !(a < b); }

    BigRational abs() const {
        BigRational r;
        r.num_ = ::abs(num_);
        r.den_ = den_;
        return r;
    }

    BigRational inverse() const {
        if (num_ == 0)
            throw DomainError("BigRational: inverse of zero");
        return BigRational(den_, num_);
    }

    // Exact integer power; k may be negative (value must then be nonzero).
    BigRational pow(long k) const {
        if (k < 0)
            return inverse().pow(-k);
        BigRational r;
        mpz_pow_ui(r.num_.get_mpz_t(), num_.get_mpz_t(), static_cast<unsigned long>(k));
        mpz_pow_ui(r.den_.get_mpz_t(), den_.get_mpz_t(), static_cast<unsigned long>(k));
        // num/den are coprime, so their powers are too; no re-reduction needed.
        return r;
    }

    std::string to_string() const {
        if (den_ == 1)
            return num_.get_str();
        return num_.get_str() + "/" + den_.get_str();
    }

    double to_double() const {
        mpq_class q(num_, den_);
        return q.get_d();
    }

private:
    void canonicalize() {
        if (sgn(den_) < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    mpz_class num_;
    mpz_class den_;
};

enum class RatOp { add, sub, mul, div };

inline BigRational rat_make(const mpz_class& n, const mpz_class& d) { return BigRational(n, d); }
inline BigRational rat_make(long n, long d) { return BigRational(n, d); }

inline BigRational rat_arith(const BigRational& a, const BigRational& b, RatOp op) {
    switch (op) {
        case RatOp::add: return a + b;
        case RatOp::sub: return a - b;
        case RatOp::mul: return a * b;
        case RatOp::div: return a / b;
    }
    throw UsageError("rat_arith: bad op");
}

inline mpz_class factorial(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline mpz_class pow_ui(unsigned long base, unsigned long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, k);
    return r;
}

}  // namespace e2pi

#endif  // E2PI_RATIONAL_HPP
