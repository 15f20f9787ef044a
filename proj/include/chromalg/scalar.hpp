#pragma once

/* Exact arithmetic over Z_(p) (rationals with p-coprime denominator) and F_p,
 * plus values of finitely generated p-local abelian groups. */

#include <gmpxx.h>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace chromalg {

class grading_mismatch : public std::runtime_error {
public:
    explicit grading_mismatch(const std::string& what) : std::runtime_error(what) {}
};

class degree_bound_exceeded : public std::runtime_error {
public:
    explicit degree_bound_exceeded(const std::string& what) : std::runtime_error(what) {}
};

class integrality_failure : public std::runtime_error {
public:
    explicit integrality_failure(const std::string& what) : std::runtime_error(what) {}
};

/* Exact rational relative to a fixed prime p.  The canonical state has
 * gcd(denominator, p) = 1; the p-typical log computation temporarily holds
 * p-power denominators, so p-integrality is a queryable property rather than
 * a constructor invariant. */
class PLocalScalar {
public:
    PLocalScalar() : value_(0), prime_(0) {}
    PLocalScalar(long num, long prime) : value_(num), prime_(prime) {}
    PLocalScalar(const mpq_class& v, long prime) : value_(v), prime_(prime) {
        value_.canonicalize();
    }
    static PLocalScalar zero(long prime) { return PLocalScalar(0, prime); }
    static PLocalScalar one(long prime) { return PLocalScalar(1, prime); }

    long prime() const { return prime_; }
    const mpq_class& value() const { return value_; }
    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }

    bool is_p_integral() const {
        if (prime_ == 0) return true;
        return mpz_divisible_ui_p(value_.get_den().get_mpz_t(), prime_) == 0;
    }

    /* p-adic valuation; 0 for the zero scalar by convention of callers that
     * filter zeros first. */
    long valuation() const {
        if (value_ == 0) return 0;
        long v = 0;
        mpz_class n = value_.get_num();
        while (mpz_divisible_ui_p(n.get_mpz_t(), prime_)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), prime_);
            ++v;
        }
        mpz_class d = value_.get_den();
        while (mpz_divisible_ui_p(d.get_mpz_t(), prime_)) {
            mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), prime_);
            --v;
        }
        return v;
    }

    bool is_unit() const { return !is_zero() && valuation() == 0 && is_p_integral(); }

    PLocalScalar operator-() const { return PLocalScalar(mpq_class(-value_), prime_); }
    PLocalScalar operator+(const PLocalScalar& o) const {
        check(o);
        return PLocalScalar(mpq_class(value_ + o.value_), pick(o));
    }
    PLocalScalar operator-(const PLocalScalar& o) const {
        check(o);
        return PLocalScalar(mpq_class(value_ - o.value_), pick(o));
    }
    PLocalScalar operator*(const PLocalScalar& o) const {
        check(o);
        return PLocalScalar(mpq_class(value_ * o.value_), pick(o));
    }
    PLocalScalar operator/(const PLocalScalar& o) const {
        check(o);
        if (o.value_ == 0) throw std::domain_error("PLocalScalar: division by zero");
        return PLocalScalar(mpq_class(value_ / o.value_), pick(o));
    }
    PLocalScalar& operator+=(const PLocalScalar& o) { return *this = *this + o; }
    PLocalScalar& operator-=(const PLocalScalar& o) { return *this = *this - o; }
    PLocalScalar& operator*=(const PLocalScalar& o) { return *this = *this * o; }

    bool operator==(const PLocalScalar& o) const { return value_ == o.value_; }
    bool operator!=(const PLocalScalar& o) const { return value_ != o.value_; }

    /* Exact quotient by p^k. */
    PLocalScalar shift(long k) const {
        mpq_class q = value_;
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(prime_),
                      static_cast<unsigned long>(k >= 0 ? k : -k));
        if (k >= 0)
            q /= mpq_class(pk);
        else
            q *= mpq_class(pk);
        return PLocalScalar(q, prime_);
    }

    /* Residue in {0, ..., p-1}; requires p-integrality. */
    unsigned long mod_p() const {
        if (value_ == 0) return 0;
        if (!is_p_integral()) throw integrality_failure("mod_p of non p-integral scalar");
        mpz_class n = value_.get_num() % prime_;
        mpz_class d = value_.get_den() % prime_;
        if (n < 0) n += prime_;
        if (d < 0) d += prime_;
        mpz_class dinv;
        mpz_class pz(static_cast<long>(prime_));
        if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t()) == 0)
            throw integrality_failure("mod_p: denominator not invertible");
        mpz_class r = (n * dinv) % prime_;
        return r.get_ui();
    }

    std::string str() const {
        std::ostringstream os;
        os << value_;
        return os.str();
    }

private:
    void check(const PLocalScalar& o) const {
        if (prime_ != 0 && o.prime_ != 0 && prime_ != o.prime_)
            throw grading_mismatch("PLocalScalar: mixed primes");
    }
    long pick(const PLocalScalar& o) const { return prime_ != 0 ? prime_ : o.prime_; }

    mpq_class value_;
    long prime_;
};

/* The field F_p for small p. */
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(long v, long p) : p_(p) {
        long r = v % p;
        if (r < 0) r += p;
        v_ = static_cast<unsigned long>(r);
    }
    static Fp zero(long p) { return Fp(0, p); }
    static Fp one(long p) { return Fp(1, p); }
    static Fp from_scalar(const PLocalScalar& s) {
        return Fp(static_cast<long>(s.mod_p()), s.prime());
    }

    long prime() const { return p_; }
    unsigned long rep() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Fp operator-() const { return Fp(-static_cast<long>(v_), p_); }
    Fp operator+(const Fp& o) const { return Fp(static_cast<long>(v_ + o.v_), pick(o)); }
    Fp operator-(const Fp& o) const {
        return Fp(static_cast<long>(v_) - static_cast<long>(o.v_), pick(o));
    }
    Fp operator*(const Fp& o) const { return Fp(static_cast<long>(v_ * o.v_), pick(o)); }
    Fp inverse() const {
        if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
        long t = 0, newt = 1, r = p_, newr = static_cast<long>(v_);
        while (newr != 0) {
            long q = r / newr;
            long tmp = t - q * newt; t = newt; newt = tmp;
            tmp = r - q * newr; r = newr; newr = tmp;
        }
        return Fp(t, p_);
    }
    Fp operator/(const Fp& o) const { return *this * o.inverse(); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    bool operator==(const Fp& o) const { return v_ == o.v_; }
    bool operator!=(const Fp& o) const { return v_ != o.v_; }

    bool is_p_integral() const { return true; }
    bool is_unit() const { return v_ != 0; }

    std::string str() const { return std::to_string(v_); }

private:
    long pick(const Fp& o) const { return p_ != 0 ? p_ : o.p_; }
    unsigned long v_;
    long p_;
};

/* Finitely generated p-local abelian group: Z_(p)^free + sum of Z/p^{e_i},
 * torsion exponents sorted ascending. */
struct FGPGroup {
    long prime = 0;
    long free_rank = 0;
    std::vector<long> torsion_exponents;

    bool is_zero() const { return free_rank == 0 && torsion_exponents.empty(); }

    bool operator==(const FGPGroup& o) const {
        return free_rank == o.free_rank && torsion_exponents == o.torsion_exponents;
    }
    bool operator!=(const FGPGroup& o) const { return !(*this == o); }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        if (free_rank > 0) {
            os << "Z_(" << prime << ")";
            if (free_rank > 1) os << "^" << free_rank;
            first = false;
        }
        long i = 0;
        while (i < static_cast<long>(torsion_exponents.size())) {
            long j = i;
            while (j < static_cast<long>(torsion_exponents.size()) &&
                   torsion_exponents[j] == torsion_exponents[i])
                ++j;
            if (!first) os << " + ";
            mpz_class pk;
            mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(prime),
                          static_cast<unsigned long>(torsion_exponents[i]));
            os << "Z/" << pk.get_str();
            if (j - i > 1) os << "^" << (j - i);
            first = false;
            i = j;
        }
        return os.str();
    }

    /* torsion orders as comma-joined p-powers, e.g. "3,9"; empty if none */
    std::string torsion_str() const {
        std::ostringstream os;
        for (size_t i = 0; i < torsion_exponents.size(); ++i) {
            if (i) os << ",";
            mpz_class pk;
            mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(prime),
                          static_cast<unsigned long>(torsion_exponents[i]));
            os << pk.get_str();
        }
        return os.str();
    }
};

inline mpz_class pow_p(long p, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

} // namespace chromalg
