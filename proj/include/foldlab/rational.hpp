#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "foldlab/errors.hpp"

namespace foldlab {

// Exact rational scalar. mpq_class keeps values canonical (reduced, positive
// denominator) as long as two-argument construction is routed through
// make_rat, so equality and hashing are structural.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw DivisionByZeroError("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DivisionByZeroError("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline int sign_of(const Rat& r) { return sgn(r); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// "num/den" with the "/den" part omitted for integers.
inline std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw ConfigError("cannot parse rational '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::size_t hash_mpz(const mpz_t z) {
    // Residues modulo two large primes; cheap and stable across runs.
    std::size_t h = mpz_fdiv_ui(z, 0xffffffffffc5ULL);
    std::size_t g = mpz_fdiv_ui(z, 0xfffffffbULL);
    if (mpz_sgn(z) < 0) h = ~h;
    return h * 0x9e3779b97f4a7c15ULL + g;
}

inline std::size_t hash_rat(const Rat& r) {
    std::size_t h = hash_mpz(r.get_num().get_mpz_t());
    std::size_t g = hash_mpz(r.get_den().get_mpz_t());
    return h ^ (g + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

inline std::size_t hash_combine(std::size_t a, std::size_t b) {
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

// The base ring k = Z[1/P] for a finite set of primes P, or Q when
// no restriction is requested. Membership of a rational is decided by the
// primes of its reduced denominator.
class BaseRing {
public:
    BaseRing() : field_(true) {}
    explicit BaseRing(std::vector<unsigned long> primes)
        : primes_(std::move(primes)), field_(false) {}

    static BaseRing rationals() { return BaseRing(); }

    bool is_field() const { return field_; }
    const std::vector<unsigned long>& primes() const { return primes_; }

    bool contains(const Rat& r) const {
        if (field_) return true;
        mpz_class den = r.get_den();
        for (unsigned long p : primes_) {
            mpz_class tmp;
            mpz_remove(tmp.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t());
            den = tmp;
        }
        return den == 1;
    }

    // Units of Z[1/P] are +-(products of powers of P).
    bool is_unit(const Rat& r) const {
        if (r == 0) return false;
        if (field_) return true;
        return contains(r) && contains(make_rat(1, 1) / r);
    }

    bool operator==(const BaseRing& o) const {
        return field_ == o.field_ && primes_ == o.primes_;
    }

private:
    std::vector<unsigned long> primes_;
    bool field_;
};

enum class Mode { Field, Integral };

}  // namespace foldlab
